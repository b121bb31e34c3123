"""Command line interface: ``riesz-lab {greedy,minimize,equilibrium,diagnose,suite}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import diagnostics as dg
from . import equilibrium as eq
from . import experiments as ex
from .energy import Kernel, total_energy
from .geometry import CompactSet
from .greedy import GreedyPlan, greedy_sequence
from .io import PointsFileError, load_points, save_points, write_report
from .minimizer import MinimizePlan, minimize_energy


def _add_set_kernel(p, kernel_required=True):
    p.add_argument("--set", required=True, help="sphere2, circle, interval, disk, ball3, torus, or a JSON object")
    g = p.add_mutually_exclusive_group(required=kernel_required)
    g.add_argument("--s", type=float, help="Riesz exponent s > 0")
    g.add_argument("--log", action="store_true", help="logarithmic kernel")


def _kernel(args):
    if getattr(args, "log", False):
        return Kernel.log()
    if getattr(args, "s", None) is None:
        return None
    return Kernel.riesz(args.s)


def _schedule(text):
    return [int(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="riesz-lab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("greedy", help="greedy s-energy sequence")
    _add_set_kernel(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=4096, help="candidates per step")
    p.add_argument("--seeded-first", action="store_true", help="random first point instead of the canonical one")
    p.add_argument("--out", required=True)
    p.add_argument("--report")

    p = sub.add_parser("minimize", help="near-minimal energy configuration")
    _add_set_kernel(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iters", type=int, default=3000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--report")

    p = sub.add_parser("equilibrium", help="closed-form equilibrium measure checks")
    _add_set_kernel(p)
    p.add_argument("--probe-regularity", action="store_true", help="fit log-log slopes of mu(B(x, r))")
    p.add_argument("--flatness", action="store_true", help="Monte Carlo potential at interior/exterior probes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("diagnose", help="separation, covering radius and energy of a points file")
    p.add_argument("points")
    p.add_argument("--set", help="set for files without a header")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--s", type=float)
    g.add_argument("--log", action="store_true")
    p.add_argument("--budget", type=int, default=100_000, help="covering-radius probes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")

    p = sub.add_parser("suite", help="run canned or configured experiments; exit 1 if any verdict fails")
    p.add_argument("--name", action="append", help="canned experiment (repeatable)")
    p.add_argument("--all", action="store_true", help="every canned experiment")
    p.add_argument("--list", action="store_true", help="list canned experiments")
    p.add_argument("--config", help="experiment config JSON")
    p.add_argument("--set")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--s", type=float)
    g.add_argument("--log", action="store_true")
    p.add_argument("--mode", choices=ex.MODES, default="scaling_suite")
    p.add_argument("--n-schedule", type=_schedule)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int)
    p.add_argument("--budget", type=int, default=4096)
    p.add_argument("--out-dir", "--out", dest="out_dir")
    return ap


def cmd_greedy(args):
    A = CompactSet.from_name(args.set)
    plan = GreedyPlan(_kernel(args), A, args.n, seed=args.seed, candidate_budget=args.budget,
                      first_point="seeded" if args.seeded_first else "canonical")
    omega = greedy_sequence(plan)
    save_points(omega, args.out, plan.kernel)
    info = {"N": len(omega)}
    if len(omega) >= 2:
        info["delta"] = dg.separation(omega)
        info["energy"] = total_energy(plan.kernel, omega)
    if args.report:
        Path(args.report).write_text(json.dumps(info, indent=2, sort_keys=True) + "\n")
    print(json.dumps(info, sort_keys=True))
    return 0


def cmd_minimize(args):
    A = CompactSet.from_name(args.set)
    plan = MinimizePlan(_kernel(args), A, args.n, restarts=args.restarts, max_iters=args.max_iters)
    res = minimize_energy(plan, args.seed)
    save_points(res.configuration, args.out, plan.kernel)
    info = {"N": args.n, "energy": res.energy, "delta": dg.separation(res.configuration),
            **{k: v for k, v in res.diagnostics.items() if k != "history"}}
    if args.report:
        Path(args.report).write_text(json.dumps(info, indent=2, sort_keys=True) + "\n")
    print(json.dumps({k: info[k] for k in ("N", "energy", "delta", "converged", "iterations")}, sort_keys=True))
    return 0


def cmd_equilibrium(args):
    A = CompactSet.from_name(args.set)
    k = _kernel(args)
    em = eq.equilibrium_measure(A, k)
    cfg_expect = {}
    if args.probe_regularity and em.form == "ball":
        h = dg.WINDOWS["continuous_regularity_halfwidth"]
        b = (em.ell + k.exponent) / 2.0
        cfg_expect = {"boundary_slope": [b - h, b + h], "interior_slope": [em.ell - h, em.ell + h]}
    cfg_expect["normalization"] = [1 - 1e-6, 1 + 1e-6]
    report = dg.ScalingReport({"name": "equilibrium", "set": A.to_dict(), "kernel": k.to_dict(), "form": em.form})
    metrics = {"M": em.M, "normalization": eq.measure_of_ball(em, np.zeros(A.ambient_dim), 2 * A.diameter)}
    if args.probe_regularity and em.form == "ball":
        radii = np.geomspace(0.02, 0.2, 10)
        fb = dg.measure_regularity(lambda r: eq.measure_of_ball(em, A.canonical_point(), r), radii)
        x = np.zeros(A.ambient_dim)
        x[0] = 0.3
        fi = dg.measure_regularity(lambda r: eq.measure_of_ball(em, x, r), np.geomspace(0.02, 0.14, 10))
        report.add_fit("boundary_regularity", fb)
        report.add_fit("interior_regularity", fi)
        metrics["boundary_slope"], metrics["interior_slope"] = fb.slope, fi.slope
    if args.flatness:
        flat = ex.potential_flatness(em, seed=args.seed)
        metrics.update(flat)
        cfg_expect["flatness_ratio"] = [0.0, 4.0]
    for key, w in cfg_expect.items():
        if key in metrics:
            report.check(key, metrics[key], w)
    report.meta["metrics"] = metrics
    if args.out:
        write_report(report, args.out)
    for v in report.verdicts:
        print(v.line())
    return 0 if report.passed else 1


def cmd_diagnose(args):
    A = CompactSet.from_name(args.set) if args.set else None
    omega = load_points(args.points, A)
    out = {"N": len(omega), "set": omega.set.to_dict(), "provenance": omega.provenance}
    if len(omega) >= 2:
        out["delta"] = dg.separation(omega)
    cov = dg.covering_radius(omega, args.budget, args.seed)
    out["eta_raw"], out["eta"] = cov.raw, cov.refined
    k = _kernel(args)
    if k is not None and len(omega) >= 2:
        out["energy"] = total_energy(k, omega)
        out["kernel"] = k.to_dict()
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.report:
        Path(args.report).write_text(text + "\n")
    print(text)
    return 0


def cmd_suite(args):
    if args.list:
        for name in ex.CANNED:
            print(name)
        return 0
    reports = []
    if args.config:
        cfg = ex.ExperimentConfig.from_json(args.config)
        if args.out_dir:
            cfg.out_dir = args.out_dir
        reports.append(ex.run_experiment(cfg))
    elif args.set:
        cfg = ex.ExperimentConfig("adhoc", CompactSet.from_name(args.set), _kernel(args), args.mode,
                                  args.n_schedule or [], seed=args.seed, restarts=args.restarts,
                                  candidate_budget=args.budget, out_dir=args.out_dir)
        reports.append(ex.run_experiment(cfg))
    names = list(ex.CANNED) if args.all else (args.name or [])
    for name in names:
        if name not in ex.CANNED:
            raise ValueError(f"unknown canned experiment {name!r}")
        reports.append(ex.run_canned(name, args.seed, args.out_dir))
    if not reports:
        raise ValueError("nothing to run: give --name, --all, --config or --set")
    for rep in reports:
        print(ex.summary(rep), end="")
    return 0 if all(r.passed for r in reports) else 1


COMMANDS = {"greedy": cmd_greedy, "minimize": cmd_minimize, "equilibrium": cmd_equilibrium,
            "diagnose": cmd_diagnose, "suite": cmd_suite}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, PointsFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
