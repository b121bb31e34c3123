"""Greedy (Leja-type) s-energy sequences.

Each new point minimizes, over A, the potential generated by all previous
points.  The minimization over A is approximated by a fresh uniform
candidate set per step followed by local projected descent.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .energy import Configuration, Kernel, polarization_min
from .geometry import CompactSet


@dataclass(frozen=True)
class GreedyPlan:
    kernel: Kernel
    set: CompactSet
    N_max: int
    seed: int = 0
    first_point: str = "canonical"  # or "seeded"
    candidate_budget: int = 4096
    refine_steps: int = 50

    def __post_init__(self):
        if self.N_max < 1:
            raise ValueError("N_max must be >= 1")
        if self.candidate_budget < 256:
            raise ValueError("candidate_budget must be >= 256")
        if self.first_point not in ("canonical", "seeded"):
            raise ValueError("first_point must be 'canonical' or 'seeded'")


def _step_rng(seed: int, step: int) -> np.random.Generator:
    # candidates for step j depend only on (seed, j): gives the prefix property
    return np.random.default_rng([seed, step])


def first_point(plan: GreedyPlan) -> np.ndarray:
    if plan.first_point == "canonical":
        return plan.set.canonical_point()
    return plan.set.sample(1, _step_rng(plan.seed, 0))[0]


def next_greedy_point(plan: GreedyPlan, omega: Configuration, step: int | None = None) -> np.ndarray:
    """Point minimizing the potential of ``omega`` over a fresh candidate set.

    ``step`` (1-based index of the point being added) seeds the candidate
    draw; it defaults to ``len(omega) + 1``.
    """
    if len(omega) == 0:
        raise ValueError("omega must be nonempty")
    j = len(omega) + 1 if step is None else step
    cand = plan.set.sample(plan.candidate_budget, _step_rng(plan.seed, j))
    pol = polarization_min(plan.kernel, omega, cand, refine=True, refine_steps=plan.refine_steps)
    return pol.point


def greedy_sequence(plan: GreedyPlan, progress=None) -> Configuration:
    """First ``N_max`` greedy points, in order."""
    p = plan.set.ambient_dim
    X = np.empty((plan.N_max, p))
    X[0] = first_point(plan)
    omega = Configuration(plan.set, X[:1], "greedy", plan.seed, check=False)
    for j in range(2, plan.N_max + 1):
        omega.points = X[: j - 1]
        X[j - 1] = next_greedy_point(plan, omega, step=j)
        if progress is not None:
            progress(j)
    return Configuration(plan.set, X, "greedy", plan.seed, check=False)
