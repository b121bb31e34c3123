"""Points CSV and report JSON/CSV persistence.

Points file layout::

    # riesz-lab points
    # set: {"dim": 2, "kind": "sphere"}
    # kernel: {"kernel": "riesz", "s": 1.5}
    # provenance: greedy
    # seed: 7
    x0,x1,x2
    1,0,0
    ...

Coordinates are written with 17 significant digits so a save/load cycle is
lossless.  Files without the ``#`` header lines load as provenance
``explicit``; the set must then be given by the caller.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .energy import Configuration, Kernel
from .geometry import CompactSet

LOAD_TOL = 1e-8


class PointsFileError(ValueError):
    pass


def save_points(omega: Configuration, path, kernel: Kernel | None = None):
    path = Path(path)
    p = omega.set.ambient_dim
    with path.open("w", newline="") as fh:
        fh.write("# riesz-lab points\n")
        fh.write(f"# set: {omega.set.to_json()}\n")
        if kernel is not None:
            fh.write(f"# kernel: {json.dumps(kernel.to_dict(), sort_keys=True)}\n")
        fh.write(f"# provenance: {omega.provenance}\n")
        fh.write(f"# seed: {'' if omega.seed is None else omega.seed}\n")
        fh.write(",".join(f"x{i}" for i in range(p)) + "\n")
        for row in omega.points:
            fh.write(",".join(format(float(v), ".17g") for v in row) + "\n")


def read_header(path) -> dict:
    meta = {}
    with Path(path).open() as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if ":" in body:
                key, _, val = body.partition(":")
                meta[key.strip()] = val.strip()
    return meta


def load_points(path, set: CompactSet | None = None) -> Configuration:
    """Read a points CSV.  Raises PointsFileError on malformed or off-set data."""
    path = Path(path)
    meta = read_header(path)
    if "set" in meta:
        try:
            file_set = CompactSet.from_dict(json.loads(meta["set"]))
        except (ValueError, json.JSONDecodeError) as exc:
            raise PointsFileError(f"bad set header: {exc}") from None
        if set is not None and set != file_set:
            raise PointsFileError(f"file set {file_set} does not match requested {set}")
        set = file_set
    if set is None:
        raise PointsFileError("file has no set header; pass the set explicitly")
    provenance = meta.get("provenance") or "explicit"
    seed = int(meta["seed"]) if meta.get("seed") else None

    rows = []
    with path.open(newline="") as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#") and line.strip())
        for lineno, row in enumerate(reader):
            if lineno == 0 and row and row[0].strip().startswith("x"):
                continue
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise PointsFileError(f"non-numeric row {lineno}: {row}") from None
    if not rows:
        raise PointsFileError("no points in file")
    if any(len(r) != set.ambient_dim for r in rows):
        raise PointsFileError(f"expected {set.ambient_dim} columns per row")
    X = np.array(rows)
    if not np.all(np.isfinite(X)):
        raise PointsFileError("non-finite coordinates")
    res = np.asarray(set.residual(X))
    if np.max(res) > LOAD_TOL:
        raise PointsFileError(f"point {int(np.argmax(res))} is off the set (residual {np.max(res):.3g})")
    loose = res > 1e-10
    if np.any(loose):
        X[loose] = set.project(X[loose])
    try:
        return Configuration(set, X, provenance, seed)
    except ValueError as exc:
        raise PointsFileError(str(exc)) from None


def write_report(report, path):
    """Report JSON plus a CSV mirror of the rows next to it."""
    path = Path(path)
    d = report.to_dict()
    path.write_text(json.dumps(d, indent=2, sort_keys=True, default=_jsonable) + "\n")
    if d["rows"]:
        keys = list(d["rows"][0])
        with path.with_suffix(".csv").open("w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=keys)
            w.writeheader()
            for row in d["rows"]:
                w.writerow({k: _jsonable(row.get(k)) if isinstance(row.get(k), np.generic) else row.get(k) for k in keys})


def _jsonable(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")
