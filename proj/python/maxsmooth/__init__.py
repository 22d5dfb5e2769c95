"""Max functions, eigenvalue extremal functions and level-set solvers."""

from ._core import (
    ArgumentError,
    CapabilityError,
    Counterexample,
    DomainError,
    LtiSystem,
    NumericalError,
    PoleError,
    PreconditionError,
    ResolutionError,
    __version__,
    empirical_order,
    eval_extremal,
    hinf_norm,
    is_stable,
    isolation_bound,
    local_refine,
    numerical_radius,
    passivity_gamma,
    passivity_margin,
    plot_data,
    random_system,
    smoothness_probe,
    verify_c3,
    verify_isolated_max,
)

__all__ = [
    "ArgumentError",
    "CapabilityError",
    "Counterexample",
    "DomainError",
    "LtiSystem",
    "NumericalError",
    "PoleError",
    "PreconditionError",
    "ResolutionError",
    "__version__",
    "empirical_order",
    "eval_extremal",
    "hinf_norm",
    "is_stable",
    "isolation_bound",
    "local_refine",
    "numerical_radius",
    "passivity_gamma",
    "passivity_margin",
    "plot_data",
    "random_system",
    "smoothness_probe",
    "verify_c3",
    "verify_isolated_max",
]
