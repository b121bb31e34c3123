"""Discrete and continuous Riesz s-energy: greedy points, near-minimizers,
equilibrium measures, and empirical checks of separation/covering exponents."""
from ._accel import BACKEND
from .diagnostics import covering_radius, empirical_regularity, fit_exponent, greedy_separation_floor, separation
from .energy import (
    CoincidentPointsError,
    Configuration,
    Kernel,
    energy_gradient,
    pair_interaction,
    polarization_min,
    potential_sum,
    total_energy,
)
from .equilibrium import (
    EquilibriumMeasure,
    density,
    equilibrium_measure,
    equilibrium_potential,
    measure_of_ball,
    sample_measure,
    wiener_estimate,
)
from .geometry import NAMED_SETS, CompactSet
from .greedy import GreedyPlan, greedy_sequence, next_greedy_point
from .minimizer import MinimizePlan, descend_step, minimize_energy

__version__ = "0.1.0"
