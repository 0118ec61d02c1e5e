"""Runge double-recalculation error estimation and computational order.

With no closed-form solution available, the error of a run with step tau
is estimated against a rerun with step tau/2 on the bisected grid:

  xi = max_i |x_i - x~_{2i}| / (2^mu - 1)

where the max runs over coincident nodes and mu = 1 + min(alpha) is the
theoretical order of the scheme.  The empirical computational order
between consecutive refinements is p = log2(xi_coarse / xi_fine).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .solver import SystemSpec, Trajectory, UniformGrid, abm_solve

__all__ = [
    "ConvergenceRow",
    "ConvergenceReport",
    "runge_error",
    "computational_order",
    "convergence_study",
]


@dataclass(frozen=True)
class ConvergenceRow:
    """One refinement level: step count, step size, per-component Runge
    error estimates, and empirical orders (None when there is no coarser
    row to compare against, or when the estimate degenerated to zero)."""

    steps: int
    step_size: float
    xi_x: float
    xi_y: float
    p_x: float | None
    p_y: float | None


@dataclass(frozen=True)
class ConvergenceReport:
    """Ordered refinement rows (step counts doubling) plus the theoretical
    order mu used in the Runge denominators."""

    rows: tuple[ConvergenceRow, ...]
    mu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        for prev, cur in zip(self.rows, self.rows[1:]):
            if cur.steps != 2 * prev.steps:
                raise ValueError(
                    f"rows must double in steps, got {prev.steps} then {cur.steps}"
                )


def runge_error(
    coarse: Trajectory, fine: Trajectory, mu: float, component: int
) -> float:
    """Runge error estimate for one component from a tau vs tau/2 pair.

    Compares only coincident nodes (fine index 2i against coarse index i,
    including the endpoints); no interpolation is performed.
    """
    if mu <= 0.0:
        raise ValueError(f"mu must be positive, got {mu}")
    if fine.steps != 2 * coarse.steps:
        raise ValueError(
            "fine trajectory must bisect the coarse one: expected "
            f"{2 * coarse.steps} steps, got {fine.steps}"
        )
    if not math.isclose(coarse.horizon, fine.horizon, rel_tol=1e-12, abs_tol=0.0):
        raise ValueError(
            f"horizons differ: coarse ends at {coarse.horizon}, "
            f"fine at {fine.horizon}"
        )
    if not 0 <= component < coarse.states.shape[1]:
        raise ValueError(f"component index {component} out of range")
    deltas = coarse.states[:, component] - fine.states[::2, component]
    return float(abs(deltas).max() / (2.0**mu - 1.0))


def computational_order(xi_coarse: float, xi_fine: float) -> float:
    """Empirical order p = log2(xi_coarse / xi_fine) between refinements."""
    if xi_coarse <= 0.0 or xi_fine <= 0.0:
        raise ValueError(
            "Runge estimates must be strictly positive to compute an order, "
            f"got ({xi_coarse}, {xi_fine})"
        )
    return math.log2(xi_coarse / xi_fine)


def _order_or_none(xi_coarse: float, xi_fine: float) -> float | None:
    if xi_coarse <= 0.0 or xi_fine <= 0.0:
        return None
    return computational_order(xi_coarse, xi_fine)


def convergence_study(
    system: SystemSpec, horizon: float, step_counts: Sequence[int]
) -> ConvergenceReport:
    """Solve at each N and 2N, estimate errors, and assemble the report.

    ``step_counts`` must be strictly doubling with at least two entries.
    Each distinct grid is solved exactly once (the 2N solve of one row is
    the N solve of the next).  Solver non-finite failures propagate with
    the offending step count in the exception.
    """
    if system.dimension != 2:
        raise ValueError(
            f"convergence_study expects a 2-component system, got dimension "
            f"{system.dimension}"
        )
    counts = [int(n) for n in step_counts]
    if len(counts) < 2:
        raise ValueError("step_counts must contain at least two entries")
    if counts[0] < 1:
        raise ValueError(f"step counts must be positive, got {counts[0]}")
    for prev, cur in zip(counts, counts[1:]):
        if cur != 2 * prev:
            raise ValueError(
                f"step_counts must strictly double, got {prev} then {cur}"
            )

    mu = 1.0 + min(order.value for order in system.orders)

    solutions: dict[int, Trajectory] = {}

    def solve(steps: int) -> Trajectory:
        if steps not in solutions:
            solutions[steps] = abm_solve(system, UniformGrid(horizon, steps))
        return solutions[steps]

    rows: list[ConvergenceRow] = []
    for n in counts:
        coarse, fine = solve(n), solve(2 * n)
        xi_x = runge_error(coarse, fine, mu, 0)
        xi_y = runge_error(coarse, fine, mu, 1)
        if rows:
            p_x = _order_or_none(rows[-1].xi_x, xi_x)
            p_y = _order_or_none(rows[-1].xi_y, xi_y)
        else:
            p_x = p_y = None
        rows.append(
            ConvergenceRow(
                steps=n,
                step_size=horizon / n,
                xi_x=xi_x,
                xi_y=xi_y,
                p_x=p_x,
                p_y=p_y,
            )
        )
    return ConvergenceReport(rows=tuple(rows), mu=mu)
