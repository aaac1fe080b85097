import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotmorse.core import MoleculeParams, builtin_molecule, reference_table
from rotmorse.spectrum import (
    NoBoundSpectrumError,
    SpectralParams,
    UnboundStateError,
    bound_count,
    bound_state,
    energies,
    energy,
    energy_from_epsilon,
    epsilon_of_n,
    max_bound_n,
    morse_s_wave,
    spectral_setup,
    state_params,
)

from conftest import MOLECULES, TABLE_STATES


def test_l_zero_setup(molecule):
    sp = spectral_setup(molecule, 0)
    assert sp.beta2_sq == pytest.approx(sp.lambda0_sq * molecule.V0, rel=1e-15)
    assert sp.beta1_sq == pytest.approx(2 * sp.lambda0_sq * molecule.V0, rel=1e-15)
    assert sp.beta1_sq / sp.beta2 == pytest.approx(2 * molecule.lambda0 * math.sqrt(molecule.V0), rel=1e-14)


def test_h2_l10_frozen(h2):
    # 30-digit evaluation from the molecule constants
    sp = spectral_setup(h2, 10)
    assert sp.beta1_sq == pytest.approx(1270.8138224590320057, rel=1e-13)
    assert sp.beta2_sq == pytest.approx(711.76228011146571581, rel=1e-13)


def test_no_bound_spectrum():
    # Tiny well, huge rotational constant: gamma a1 > 2 V0 at moderate l.
    weak = MoleculeParams("weak", V0=0.01, r0=0.5, alpha=3.0, reduced_mass=0.5)
    with pytest.raises(NoBoundSpectrumError):
        spectral_setup(weak, 10)
    assert energies(weak, [0], [10]) == {(0, 10): None}


def test_bound_count_artificial():
    alpha, beta2 = 1.0, 10.0
    sp = SpectralParams(beta1_sq=0.4 * 2 * alpha * beta2, beta2_sq=beta2**2, lambda0_sq=1.0, alpha=alpha)
    assert sp.level_ratio == pytest.approx(0.4)
    assert bound_count(sp) == 0
    with pytest.raises(UnboundStateError):
        epsilon_of_n(sp, 0)


def test_epsilon_boundary_is_unbound():
    # beta1^2/(2 beta2) = alpha (n + 1/2) exactly at n = 2
    sp = SpectralParams(beta1_sq=2 * 2.5 * 4.0, beta2_sq=16.0, lambda0_sq=1.0, alpha=1.0)
    assert epsilon_of_n(sp, 1) == 1.0
    with pytest.raises(UnboundStateError):
        epsilon_of_n(sp, 2)
    assert bound_count(sp) == 2


def test_epsilon_l_zero(molecule):
    sp = spectral_setup(molecule, 0)
    for n in (0, 3, 7):
        assert epsilon_of_n(sp, n) == pytest.approx(molecule.lambda0 * math.sqrt(molecule.V0) - molecule.alpha * (n + 0.5), rel=1e-13)


def test_h2_ground_epsilon_matches_table(h2):
    sp = spectral_setup(h2, 0)
    eps_table = math.sqrt(-sp.lambda0_sq * (-4.47600 - sp.gamma * sp.a0))
    assert epsilon_of_n(sp, 0) == pytest.approx(eps_table, rel=2e-5)


@pytest.mark.parametrize(
    "name, n, l, expected, tol",
    [("H2", 0, 0, -4.47600, 1e-4), ("CO", 5, 10, -9.76967, 1e-3), ("HCl", 7, 5, -2.22619, 1e-3)],
)
def test_paper_examples(name, n, l, expected, tol):
    assert abs(energy(builtin_molecule(name), n, l) - expected) <= tol


def test_state_params_require_epsilon(h2):
    sp = spectral_setup(h2, 5)
    with pytest.raises(ValueError):
        sp.kappa
    with pytest.raises(ValueError):
        sp.p


@pytest.mark.parametrize("name", MOLECULES)
@pytest.mark.parametrize("n, l", TABLE_STATES)
def test_state_invariants(name, n, l):
    mol = builtin_molecule(name)
    sp = state_params(spectral_setup(mol, l), n)
    assert sp.beta1_sq > 0 and sp.beta2_sq > 0
    assert sp.p + sp.q == pytest.approx(2 * sp.kappa + 1, rel=1e-14)
    assert sp.q - sp.p == pytest.approx(sp.beta1_sq / (sp.alpha * sp.beta2), rel=1e-14)
    assert sp.q > sp.p
    assert abs(sp.p + n) <= 1e-10
    e = energy(mol, n, l)
    assert abs(e - energy_from_epsilon(sp, sp.epsilon)) <= 1e-12 * abs(e)


@pytest.mark.parametrize("name", MOLECULES)
def test_monotone_in_n_and_l(name):
    mol = builtin_molecule(name)
    for l in range(11):
        col = [energy(mol, n, l) for n in range(8)]
        assert all(a < b for a, b in zip(col, col[1:]))
    for n in range(8):
        row = [energy(mol, n, l) for l in range(11)]
        assert all(a < b for a, b in zip(row, row[1:]))


@pytest.mark.parametrize("name", MOLECULES)
def test_s_wave_reduction(name):
    mol = builtin_molecule(name)
    for n in range(max_bound_n(mol, 0)):
        e = energy(mol, n, 0)
        assert abs(e - morse_s_wave(mol, n)) <= 1e-12 * abs(e)


@given(
    st.floats(0.5, 12.0), st.floats(0.5, 2.0), st.floats(0.8, 3.0), st.floats(0.4, 20.0), st.integers(0, 15)
)
def test_s_wave_reduction_random(v0, r0, alpha, mass, n):
    mol = MoleculeParams("X", v0, r0, alpha, mass)
    if n >= max_bound_n(mol, 0):
        with pytest.raises(UnboundStateError):
            energy(mol, n, 0)
        return
    e = energy(mol, n, 0)
    assert abs(e - morse_s_wave(mol, n)) <= 1e-12 * abs(e)


def test_bound_counts(h2):
    assert max_bound_n(h2, 0) >= 8
    assert max_bound_n(builtin_molecule("CO"), 10) >= 8
    n_top = max_bound_n(h2, 0)
    energy(h2, n_top - 1, 0)
    with pytest.raises(UnboundStateError):
        energy(h2, n_top, 0)


def test_energies_grid_marks_unbound(h2):
    n_top = max_bound_n(h2, 0)
    grid = energies(h2, [0, n_top], [0])
    assert grid[(0, 0)] == energy(h2, 0, 0)
    assert grid[(n_top, 0)] is None


def test_bound_state_bundle(h2):
    s = bound_state(h2, 0, 0)
    assert (s.n, s.l) == (0, 0)
    assert s.energy == energy(h2, 0, 0)
    # normalization constant of the ground state, frozen from a 30-digit quadrature
    assert s.normalization == pytest.approx(66013574.705696982513, rel=1e-9)


def test_icr_tables_reproduced(molecule):
    table = reference_table(molecule.name)
    tol = 1e-4 if molecule.name == "H2" else 1e-3
    for n, l, ref in table.entries:
        assert abs(energy(molecule, n, l) - ref) <= tol
