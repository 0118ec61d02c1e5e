"""Generalized Dubovsky model of long economic waves.

A two-component fractional system for the efficiency of innovations x(t)
and the efficiency of capital productivity y(t), with Gerasimov-Caputo
derivative orders (alpha1, alpha2) and periodic external forcing:

  D^alpha1 x = -lam * n * x (x - 1) (y - y_star) + delta1 * cos(omega1 * t)
  D^alpha2 y =  n (1 - n) * y^2 (x - x_star)     + delta2 * cos(omega2 * t)

with initial state (a, b).  Both forcing terms enter additively, so the
right-hand side is the superposition of the autonomous vector field and
the time-periodic drive; (x_star, y_star) is an equilibrium of the
unforced system.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .solver import FractionalOrder, RhsFunction, SystemSpec, as_order

__all__ = ["GdmParams", "DEFAULT_PARAMS", "gdm_rhs", "gdm_system"]


@dataclass(frozen=True)
class GdmParams:
    """Model parameters; ``lam`` is the cycle size/duration parameter
    lambda and ``accumulation_rate`` the accumulation rate n in (0, 1)."""

    lam: float = 1.5
    accumulation_rate: float = 0.2
    delta1: float = 1.0
    delta2: float = 1.0
    omega1: float = 0.5
    omega2: float = 0.5
    x_star: float = 1.35
    y_star: float = 0.5
    a: float = 5.0
    b: float = 4.0
    alpha1: FractionalOrder = FractionalOrder(1.0)
    alpha2: FractionalOrder = FractionalOrder(1.0)

    def __post_init__(self) -> None:
        if self.lam <= 0.0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not 0.0 < self.accumulation_rate < 1.0:
            raise ValueError(
                "accumulation_rate must lie in (0, 1), "
                f"got {self.accumulation_rate}"
            )
        for name in ("delta1", "delta2", "omega1", "omega2"):
            if getattr(self, name) < 0.0:
                raise ValueError(
                    f"{name} must be non-negative, got {getattr(self, name)}"
                )
        if self.a <= 0.0:
            raise ValueError(f"a must be positive, got {self.a}")
        if self.b <= 0.0:
            raise ValueError(f"b must be positive, got {self.b}")
        for name in ("alpha1", "alpha2"):
            try:
                object.__setattr__(self, name, as_order(getattr(self, name)))
            except ValueError:
                raise ValueError(
                    f"{name} must lie in (0, 1], got {getattr(self, name)}"
                ) from None


DEFAULT_PARAMS = GdmParams()


def gdm_rhs(params: GdmParams) -> RhsFunction:
    """Right-hand side of the model as a (t, state) -> (dx, dy) closure."""
    lam = params.lam
    rate = params.accumulation_rate
    growth = rate * (1.0 - rate)

    def rhs(t: float, state: np.ndarray) -> tuple[float, float]:
        x, y = state
        dx = -lam * rate * x * (x - 1.0) * (y - params.y_star) + (
            params.delta1 * math.cos(params.omega1 * t)
        )
        dy = growth * y * y * (x - params.x_star) + (
            params.delta2 * math.cos(params.omega2 * t)
        )
        return (dx, dy)

    return rhs


def gdm_system(params: GdmParams = DEFAULT_PARAMS) -> SystemSpec:
    """Package the model as a 2-dimensional SystemSpec."""
    return SystemSpec(
        dimension=2,
        orders=(params.alpha1, params.alpha2),
        rhs=gdm_rhs(params),
        initial_state=(params.a, params.b),
    )
