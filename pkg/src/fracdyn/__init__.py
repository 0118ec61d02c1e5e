"""fracdyn: fractional Adams-Bashforth-Moulton solver for systems of
nonlinear differential equations with Gerasimov-Caputo derivatives, with
the generalized Dubovsky model of long economic waves as the flagship
system and a Runge-rule convergence-analysis harness."""
from __future__ import annotations

from .config import (
    ConfigError,
    RunConfig,
    apply_overrides,
    parse_config,
    serialize_config,
)
from .convergence import (
    ConvergenceReport,
    ConvergenceRow,
    computational_order,
    convergence_study,
    runge_error,
)
from .gdm import DEFAULT_PARAMS, GdmParams, gdm_rhs, gdm_system
from .solver import (
    FractionalOrder,
    NonFiniteStateError,
    SystemSpec,
    Trajectory,
    UniformGrid,
    abm_solve,
    rho_weight,
    rl_integral,
    theta_weight,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceReport",
    "ConvergenceRow",
    "DEFAULT_PARAMS",
    "FractionalOrder",
    "GdmParams",
    "NonFiniteStateError",
    "RunConfig",
    "SystemSpec",
    "Trajectory",
    "UniformGrid",
    "abm_solve",
    "apply_overrides",
    "computational_order",
    "convergence_study",
    "gdm_rhs",
    "gdm_system",
    "parse_config",
    "rho_weight",
    "rl_integral",
    "runge_error",
    "serialize_config",
    "theta_weight",
    "__version__",
]
