"""Self-checks for the test oracles (independent of the solver)."""
from __future__ import annotations

import math

import numpy as np
import pytest

from fracdyn import FractionalOrder, SystemSpec, UniformGrid

from oracles import classical_pece, mittag_leffler

# E_0.8(-1) from the series oracle at tol=1e-12, frozen on first computation
E_08_AT_MINUS_1 = 0.38694857861897636


class TestMittagLeffler:
    def test_alpha_one_is_exp(self):
        assert mittag_leffler(1.0, -1.0, 1e-12) == pytest.approx(
            math.exp(-1.0), abs=1e-12
        )
        assert mittag_leffler(1.0, -1.0, 1e-10) == pytest.approx(
            0.3678794412, abs=1e-9
        )

    def test_alpha_one_matches_exp_on_domain(self):
        for z in np.linspace(-5.0, 0.0, 21):
            assert mittag_leffler(1.0, float(z), 1e-13) == pytest.approx(
                math.exp(z), abs=1e-10
            )

    def test_zero_argument_is_one(self):
        for alpha in (0.1, 0.3, 0.5, 0.8, 1.0):
            assert mittag_leffler(alpha, 0.0, 1e-12) == 1.0

    def test_half_alpha_closed_form(self):
        # E_{1/2}(z) = exp(z^2) erfc(-z) for real z
        assert mittag_leffler(0.5, -1.0, 1e-14) == pytest.approx(
            math.exp(1.0) * math.erfc(1.0), abs=1e-13
        )

    def test_frozen_regression_value(self):
        assert mittag_leffler(0.8, -1.0, 1e-12) == pytest.approx(
            E_08_AT_MINUS_1, abs=1e-12
        )

    def test_tolerance_controls_truncation(self):
        coarse = mittag_leffler(0.7, -2.0, 1e-4)
        fine = mittag_leffler(0.7, -2.0, 1e-14)
        assert abs(coarse - fine) < 1e-4

    @pytest.mark.parametrize(
        "alpha,z,tol",
        [
            (0.0, -1.0, 1e-12),
            (-0.3, -1.0, 1e-12),
            (1.2, -1.0, 1e-12),
            (0.8, 0.5, 1e-12),
            (0.8, -5.1, 1e-12),
            (0.8, -1.0, 0.0),
            (0.8, -1.0, -1e-9),
        ],
    )
    def test_domain_rejections(self, alpha, z, tol):
        with pytest.raises(ValueError):
            mittag_leffler(alpha, z, tol)


def _decay_system(order: float) -> SystemSpec:
    return SystemSpec(
        dimension=1,
        orders=(FractionalOrder(order),),
        rhs=lambda t, state: (-state[0],),
        initial_state=(1.0,),
    )


class TestClassicalPece:
    def test_rejects_fractional_orders(self):
        with pytest.raises(ValueError):
            classical_pece(_decay_system(0.8), UniformGrid(1.0, 10))

    def test_zero_rhs_constant(self):
        system = SystemSpec(
            dimension=2,
            orders=(FractionalOrder(1.0), FractionalOrder(1.0)),
            rhs=lambda t, state: (0.0, 0.0),
            initial_state=(5.0, 4.0),
        )
        trajectory = classical_pece(system, UniformGrid(1.0, 17))
        assert np.all(trajectory.states == np.array([5.0, 4.0]))

    def test_exponential_decay(self):
        trajectory = classical_pece(_decay_system(1.0), UniformGrid(1.0, 320))
        assert trajectory.states[-1, 0] == pytest.approx(
            math.exp(-1.0), abs=1e-4
        )

    def test_grid_shape(self):
        trajectory = classical_pece(_decay_system(1.0), UniformGrid(2.0, 40))
        assert trajectory.times.shape == (41,)
        assert trajectory.states.shape == (41, 1)
        assert trajectory.times[0] == 0.0
        assert trajectory.times[-1] == pytest.approx(2.0, rel=1e-15)
