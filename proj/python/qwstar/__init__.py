"""Quantum-walk search on K_N with a star of m leaves glued at one vertex."""

from ._core import (
    GluedGraph,
    __version__,
    class_sizes,
    closed_form_probability,
    discriminant_angles,
    exponent_fit,
    leaves_from_alpha,
    optimal_time_branch,
    optimal_time_exact,
    probability_approx,
    reduced_operators,
    simulate_closed,
    simulate_collapsed,
    simulate_full,
    spectrum,
    theta1_approx,
)

__all__ = [
    "GluedGraph",
    "__version__",
    "class_sizes",
    "closed_form_probability",
    "discriminant_angles",
    "exponent_fit",
    "leaves_from_alpha",
    "optimal_time_branch",
    "optimal_time_exact",
    "probability_approx",
    "reduced_operators",
    "simulate_closed",
    "simulate_collapsed",
    "simulate_full",
    "spectrum",
    "theta1_approx",
]
