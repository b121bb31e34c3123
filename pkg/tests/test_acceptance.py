"""Acceptance gate: one test and one pass/fail line per criterion.

Each criterion is decided by the canned experiments listed in
``riesz_lab.experiments.CRITERIA``, at the tolerances fixed there.  Run
directly (``python tests/test_acceptance.py``) or under pytest, where the
lines appear in the terminal summary.
"""
import functools
import sys
import time

import pytest

from riesz_lab import experiments as ex

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

TITLES = {
    1: "Fekete points on [-1,1] (log, N=3,4,5)",
    2: "small-N exact optima (S2 N=2, S1 N=3)",
    3: "separation exponent of near-minimizers (S2, torus, disk interior)",
    4: "greedy separation floor and gap slope (S2, s=1.5 and s=3)",
    5: "greedy covering exponent (S2, s=3)",
    6: "closed-form ball equilibrium measure (disk, s=1)",
    7: "empirical-measure regularity (disk, s=1, N=2048)",
    8: "potential flatness of the disk equilibrium measure",
    9: "Wiener constants (interval log, circle log, circle s=0.5)",
    10: "numerical hygiene",
}

# criteria that share an experiment only look at their own verdicts
VERDICT_FILTER = {
    4: ("floor_ratio", "gap_slope"),
    5: ("eta_slope",),
}


@functools.lru_cache(maxsize=None)
def canned(name):
    t0 = time.perf_counter()
    rep = ex.run_canned(name, seed=0)
    return rep, time.perf_counter() - t0


def evaluate(n):
    verdicts, seconds = [], 0.0
    for name in ex.CRITERIA[n]:
        rep, dt = canned(name)
        seconds += dt
        keep = VERDICT_FILTER.get(n)
        verdicts += [(name, v) for v in rep.verdicts if keep is None or v.name in keep]
    return verdicts, seconds


def line(n, verdicts, seconds):
    ok = bool(verdicts) and all(v.passed for _, v in verdicts)
    failed = [f"{name}/{v.name}={v.value:.6g} not in [{v.window[0]:.6g}, {v.window[1]:.6g}]"
              for name, v in verdicts if not v.passed]
    tail = "; ".join(failed) if failed else f"{len(verdicts)} checks"
    return ok, f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {TITLES[n]}  ({tail}, {seconds:.0f}s)"


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(ex.CRITERIA))
def test_criterion(n):
    verdicts, seconds = evaluate(n)
    ok, text = line(n, verdicts, seconds)
    ACCEPTANCE_LINES.append(text)
    print(text)
    for name, v in verdicts:
        print("   ", name, v.line())
    assert ok, text


if __name__ == "__main__":
    results = []
    for n in sorted(ex.CRITERIA):
        ok, text = line(n, *evaluate(n))
        results.append(ok)
        print(text, flush=True)
    sys.exit(0 if all(results) else 1)
