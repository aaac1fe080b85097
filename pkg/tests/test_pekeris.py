import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotmorse.core import MoleculeParams
from rotmorse.pekeris import (
    PekerisExpansion,
    approx_centrifugal,
    approximation_gap,
    effective_potential,
    exact_centrifugal,
    expansion_coefficients,
    morse_potential,
    pekeris_coefficients,
)


def test_morse_trivial(h2):
    assert morse_potential(0.0, h2) == -h2.V0
    assert morse_potential(60.0, h2) == pytest.approx(0.0, abs=1e-30)
    x_half = math.log(2.0) / h2.alpha
    assert morse_potential(x_half, h2) == pytest.approx(-0.75 * h2.V0, rel=1e-15)


def test_morse_minimum_at_origin(molecule):
    h = 1e-6
    left = morse_potential(-h, molecule) - morse_potential(-2 * h, molecule)
    right = morse_potential(2 * h, molecule) - morse_potential(h, molecule)
    assert left < 0 < right
    xs = np.linspace(-0.5, 3, 1001)
    assert morse_potential(xs, molecule).min() >= -molecule.V0


def test_coefficients_alpha_three():
    a0, a1, a2 = expansion_coefficients(3.0)
    assert (a0, a1, a2) == pytest.approx((1 / 3, 2 / 3, 0.0), abs=1e-15)


@given(st.floats(0.5, 10.0))
def test_coefficients_sum_to_one(alpha):
    assert abs(sum(expansion_coefficients(alpha)) - 1.0) <= 1e-14


def test_gamma_zero_iff_l_zero(molecule):
    assert pekeris_coefficients(molecule, 0).gamma == 0.0
    assert approx_centrifugal(np.linspace(-0.5, 5, 7), pekeris_coefficients(molecule, 0), molecule.alpha).tolist() == [0.0] * 7
    for l in (1, 5, 10):
        assert pekeris_coefficients(molecule, l).gamma > 0


def test_negative_l_rejected(h2):
    with pytest.raises(ValueError):
        pekeris_coefficients(h2, -1)


def test_expansion_point_exact(h2):
    exp = pekeris_coefficients(h2, 10)
    assert approx_centrifugal(0.0, exp, h2.alpha) == pytest.approx(exp.gamma, rel=1e-14)
    assert exact_centrifugal(0.0, exp.gamma) == exp.gamma


@pytest.mark.parametrize("alpha", [0.8, 1.44063216, 2.59441302, 6.0])
def test_taylor_match_third_order(alpha):
    exp = PekerisExpansion(1.0, *expansion_coefficients(alpha))
    ratios = []
    for x in (1e-2, 5e-3, 2.5e-3):
        err = exact_centrifugal(x, 1.0) - approx_centrifugal(x, exp, alpha)
        ratios.append(err / x**3)
    # Finite limit: consecutive ratios differ by O(x), never blow up.
    assert all(math.isfinite(r) for r in ratios)
    assert abs(ratios[2] - ratios[1]) < abs(ratios[1] - ratios[0]) * 0.6 + 1e-6
    assert abs(ratios[2] - ratios[1]) < 0.05 * max(abs(ratios[2]), 1.0)


def test_taylor_error_shrinks_as_cube(h2):
    exp = pekeris_coefficients(h2, 10)
    e1 = abs(exact_centrifugal(0.1, exp.gamma) - approx_centrifugal(0.1, exp, h2.alpha))
    e2 = abs(exact_centrifugal(0.05, exp.gamma) - approx_centrifugal(0.05, exp, h2.alpha))
    assert 6.0 < e1 / e2 < 10.0


def test_effective_potential_modes(h2):
    r = np.linspace(0.3, 4.0, 50)
    assert np.array_equal(effective_potential(r, h2, 0, "exact"), effective_potential(r, h2, 0, "pekeris"))
    assert effective_potential(h2.r0, h2, 7, "exact") == pytest.approx(effective_potential(h2.r0, h2, 7, "pekeris"), rel=1e-14)


def test_effective_potential_frozen_h2(h2):
    # direct 30-digit evaluation at r = 1.2 r0, l = 10
    r = 1.2 * h2.r0
    assert effective_potential(r, h2, 10, "exact") == pytest.approx(-3.8711679070198627251, rel=1e-13)
    assert effective_potential(r, h2, 10, "pekeris") == pytest.approx(-3.8669305579172095619, rel=1e-13)
    exact, approx, rel = approximation_gap(r, h2, 10)
    assert rel == pytest.approx(abs(approx - exact) / abs(exact))
    assert 1e-4 < rel < 1e-2


def test_effective_potential_errors(h2):
    with pytest.raises(ValueError):
        effective_potential(0.0, h2, 3, "exact")
    with pytest.raises(ValueError):
        effective_potential(-1.0, h2, 0, "exact")
    with pytest.raises(ValueError):
        effective_potential(1.0, h2, 3, "other")
    # the Pekeris form is defined on the whole line
    assert math.isfinite(effective_potential(-0.1, h2, 3, "pekeris"))


def test_pekeris_expansion_is_immutable():
    exp = PekerisExpansion(1.0, 0.2, 0.3, 0.5)
    with pytest.raises(AttributeError):
        exp.gamma = 2.0
    with pytest.raises(AttributeError):
        MoleculeParams("X", 1, 1, 1, 1).V0 = 2
