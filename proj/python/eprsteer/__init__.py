"""EPR-steering bounds, Werner-state protocol simulation and counting statistics."""

from ._core import (
    DomainError,
    EstimationError,
    analytic_bound,
    cheat_steering,
    chsh_max,
    classify,
    concurrence,
    fidelity,
    full_pipeline,
    honest_steering,
    linear_entropy,
    scheme_axes,
    steering_bound,
    steering_bound_axes,
    supported_setting_counts,
    tangle,
    tomography,
    werner,
)

__all__ = [
    "DomainError",
    "EstimationError",
    "analytic_bound",
    "cheat_steering",
    "chsh_max",
    "classify",
    "concurrence",
    "fidelity",
    "full_pipeline",
    "honest_steering",
    "linear_entropy",
    "scheme_axes",
    "steering_bound",
    "steering_bound_axes",
    "supported_setting_counts",
    "tangle",
    "tomography",
    "werner",
]

__version__ = "0.1.0"
