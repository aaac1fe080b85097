"""Verification suites behind ``rotmorse verify``.

Each suite returns a list of :class:`Check` records. Checks with
``gating=False`` are reported but never fail a run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from rotmorse import icr, oracle, pekeris, spectrum, wavefunction
from rotmorse.core import TABLE_MOLECULES, MoleculeParams, builtin_molecule, reference_table
from rotmorse.specfun import kummer_1f1, laguerre, ln_gamma

TABLE_N = (0, 5, 7)
TABLE_L = (0, 5, 10)

# Allowed |E - E_table| in eV. H2 is printed to 5 decimals; the others are
# checked more loosely because CO carries fewer digits and the constants
# behind the printed columns are not fully documented.
TABLE_TOL = {"H2": 1e-4, "CO": 1e-3, "HCl": 1e-3, "LiH": 1e-3}

SUITES = ("pekeris", "specfun", "spectrum", "norm", "icr", "oracle", "moment")


@dataclass(frozen=True)
class Check:
    name: str
    max_error: float
    tolerance: float
    passed: bool
    detail: str = ""
    gating: bool = True

    def line(self) -> str:
        status = ("PASS" if self.passed else "FAIL") if self.gating else "INFO"
        text = f"{status:4}  {self.name:<34} max_err={self.max_error:.3e}  tol={self.tolerance:.1e}"
        return f"{text}  {self.detail}" if self.detail else text


def _check(name: str, err: float, tol: float, detail: str = "", gating: bool = True) -> Check:
    return Check(name, float(err), tol, bool(err <= tol), detail, gating)


def table_states(params: MoleculeParams) -> list[tuple[int, int]]:
    """The (n, l) pairs of the printed tables that are bound for ``params``."""
    states = []
    for n in TABLE_N:
        for l in TABLE_L:
            try:
                if n < spectrum.max_bound_n(params, l):
                    states.append((n, l))
            except spectrum.NoBoundSpectrumError:
                pass
    return states


def default_molecules() -> list[MoleculeParams]:
    return [builtin_molecule(name) for name in TABLE_MOLECULES.values()]


# --- suites -----------------------------------------------------------------

def suite_pekeris(molecules: Iterable[MoleculeParams]) -> list[Check]:
    alphas = np.linspace(0.5, 10.0, 96)
    sums = [abs(sum(pekeris.expansion_coefficients(a)) - 1.0) for a in alphas]
    checks = [_check("pekeris.coefficient_sum", max(sums), 1e-14, "alpha in [0.5, 10]")]

    taylor_worst = 0.0
    drift_worst = 0.0
    l0_worst = 0.0
    for params in molecules:
        exp = pekeris.pekeris_coefficients(params, 10)
        ratios = []
        for x in (1e-2, 5e-3, 2.5e-3):
            gap = pekeris.exact_centrifugal(x, exp.gamma) - pekeris.approx_centrifugal(x, exp, params.alpha)
            ratios.append(gap / (exp.gamma * x**3))
        taylor_worst = max(taylor_worst, max(abs(r) for r in ratios))
        # ratio must settle: successive values converge linearly in x
        drift_worst = max(drift_worst, abs(ratios[2] - ratios[1]) / abs(ratios[1] - ratios[0]))
        r = params.r0 * np.linspace(0.3, 5.0, 200)
        l0_worst = max(l0_worst, float(np.max(np.abs(
            pekeris.effective_potential(r, params, 0, "exact") - pekeris.effective_potential(r, params, 0, "pekeris")
        ))))
    checks.append(_check("pekeris.taylor_ratio_bounded", taylor_worst, 100.0, "|error/(gamma x^3)| at x=1e-2..2.5e-3"))
    checks.append(_check("pekeris.taylor_ratio_settles", drift_worst, 0.75, "successive ratio differences shrink"))
    checks.append(_check("pekeris.l0_modes_identical", l0_worst, 0.0))
    return checks


def suite_specfun() -> list[Check]:
    worst = 0.0
    for n in range(11):
        for b in (0.5, 1.0, 2.5, 7.0, 20.0):
            for x in np.linspace(0.0, 30.0, 61):
                series = kummer_1f1(-n, b, x)
                ratio = math.exp(ln_gamma(n + 1) + ln_gamma(b) - ln_gamma(n + b))
                via_laguerre = ratio * laguerre(n, b - 1.0, x)
                worst = max(worst, abs(series - via_laguerre) / max(1.0, abs(via_laguerre)))
    return [_check("specfun.kummer_laguerre_identity", worst, 1e-10, "n<=10, 5 b values, x in [0,30]")]


def suite_spectrum(molecules: Iterable[MoleculeParams]) -> list[Check]:
    checks = []
    consistency = quant = s_wave = 0.0
    mono_n = mono_l = True
    for params in molecules:
        for l in TABLE_L:
            try:
                sp = spectrum.spectral_setup(params, l)
            except spectrum.NoBoundSpectrumError:
                continue
            count = spectrum.bound_count(sp)
            levels = [spectrum.energy(params, n, l) for n in range(count)]
            mono_n &= all(b > a for a, b in zip(levels, levels[1:]))
            for n in range(count):
                eps = spectrum.epsilon_of_n(sp, n)
                e = levels[n]
                consistency = max(consistency, abs(e - spectrum.energy_from_epsilon(sp, eps)) / abs(e))
                quant = max(quant, abs(sp.with_epsilon(eps).p + n))
                if l == 0:
                    ref = spectrum.morse_s_wave(params, n)
                    s_wave = max(s_wave, abs(e - ref) / abs(ref))
        for n in TABLE_N:
            row = [e for e in spectrum.energies(params, [n], range(11)).values() if e is not None]
            mono_l &= all(b > a for a, b in zip(row, row[1:]))
    checks.append(_check("spectrum.energy_forms_agree", consistency, 1e-12))
    checks.append(_check("spectrum.p_equals_minus_n", quant, 1e-10))
    checks.append(_check("spectrum.s_wave_reduction", s_wave, 1e-12))
    checks.append(_check("spectrum.monotone_in_n", 0.0 if mono_n else 1.0, 0.0))
    checks.append(_check("spectrum.monotone_in_l", 0.0 if mono_l else 1.0, 0.0, "l <= 10"))
    return checks


def compare_table(table_id: int) -> tuple[str, list[tuple[int, int, float, float, float]], float]:
    """Rows (n, l, computed, reference, |diff|) for one printed table."""
    molecule = TABLE_MOLECULES[table_id]
    params = builtin_molecule(molecule)
    ref = reference_table(molecule, "ICR")
    rows = []
    for n, l, e_ref in sorted(ref.entries):
        e = spectrum.energy(params, n, l)
        rows.append((n, l, e, e_ref, abs(e - e_ref)))
    return molecule, rows, TABLE_TOL[molecule]


def suite_tables() -> list[Check]:
    checks = []
    for table_id in sorted(TABLE_MOLECULES):
        molecule, rows, tol = compare_table(table_id)
        worst = max(r[4] for r in rows)
        checks.append(_check(f"tables.{molecule}_vs_ICR", worst, tol, f"{len(rows)} states, eV"))
    return checks


def suite_norm(molecules: Iterable[MoleculeParams]) -> list[Check]:
    worst = 0.0
    count = good = 0
    nodes_ok = True
    for params in molecules:
        for n, l in table_states(params):
            sp = spectrum.state_params(spectrum.spectral_setup(params, l), n)
            err = abs(wavefunction.norm_integral(sp, n) - 1.0)
            worst = max(worst, err)
            count += 1
            good += err <= 1e-8
            x = np.linspace(-0.9, 12.0, 20001)
            nodes_ok &= wavefunction.node_count(wavefunction.radial_from_x(sp, n, x)) == n
    return [
        _check("norm.unit_norm", worst, 1e-8, f"{good}/{count} states within tolerance"),
        _check("norm.node_count_equals_n", 0.0 if nodes_ok else 1.0, 0.0),
    ]


def suite_icr(molecules: Iterable[MoleculeParams]) -> list[Check]:
    checks = []
    kernel = 0.0
    for params in molecules:
        for n, l in table_states(params):
            sp = spectrum.state_params(spectrum.spectral_setup(params, l), n)
            kernel = max(kernel, icr.kernel_equation_residual(sp))
        sp = spectrum.spectral_setup(params, 5)
        # a non-quantized epsilon as well
        generic = sp.with_epsilon(0.37 * sp.beta1_sq / (2.0 * sp.beta2))
        kernel = max(kernel, icr.kernel_equation_residual(generic))
    checks.append(_check("icr.kernel_first_order_equation", kernel, 1e-9))

    boundary = max(
        icr.boundary_term(p, q, 2.0, xi)
        for p in (0.5, 1.2, 3.0) for q in (0.5, 3.4) for xi in (0.1, 1.0, 5.0)
    )
    checks.append(_check("icr.boundary_vanishes", boundary, 0.0, "p, q > 0"))

    power = max(
        abs(icr.contour_power_identity(k, n, 0.5, icr.ContourSpec(0.0, 1.0, 256)) - 0.5**k)
        for k in range(1, 6) for n in range(1, 6)
    )
    checks.append(_check("icr.contour_power_identity", power, 1e-8, "k,n<=5, xi=0.5, 256 nodes"))
    e128 = abs(icr.contour_power_identity(5, 5, 0.9, icr.ContourSpec(0.0, 1.0, 128)) - 0.9**5)
    e256 = abs(icr.contour_power_identity(5, 5, 0.9, icr.ContourSpec(0.0, 1.0, 256)) - 0.9**5)
    ratio = e128 / max(e256, 1e-300)
    checks.append(Check("icr.spectral_convergence", 1.0 / ratio, 0.1, ratio >= 10.0, f"err ratio 128->256 nodes = {ratio:.3g}"))

    residue = 0.0
    for k in range(9):
        for n in range(1, 6):
            for xi in (-0.8, -0.35, 0.2, 0.55, 0.8):
                got = icr.residue_series_check(k, n, xi, icr.ContourSpec(0.0, 1.0, 256))
                want = icr.residue_expected(k, n, xi)
                residue = max(residue, abs(got - want))
    checks.append(_check("icr.residue_series", residue, 1e-9, "k<=8, n<=5, |xi| radius<=0.8"))

    euler = 0.0
    grid = np.linspace(0.3, 4.0, 6)[1:]
    for p in grid:
        for q in grid:
            for s in np.linspace(-6.0, 6.0, 5):
                lhs, rhs = icr.euler_integral_identity(p, q, s, tol=math.inf)
                euler = max(euler, abs(lhs - rhs) / max(1.0, abs(rhs)))
    checks.append(_check("icr.euler_integral_identity", euler, 1e-9, "125 (p, q, s) points"))
    return checks


def suite_oracle(molecules: Iterable[MoleculeParams]) -> list[Check]:
    worst = 0.0
    count = 0
    nodes_ok = True
    for params in molecules:
        states = table_states(params)
        for l in sorted({l for _, l in states}):
            ns = [n for n, l_ in states if l_ == l]
            res = oracle.solve(params, l, max(ns) + 1)
            counts = res.node_counts()
            for n in ns:
                e = spectrum.energy(params, n, l)
                worst = max(worst, abs(res.energies[n] - e) / abs(e))
                nodes_ok &= counts[n] == n
                count += 1
    checks = [
        _check("oracle.pekeris_vs_closed_form", worst, 1e-6, f"{count} states, Richardson"),
        _check("oracle.node_count_equals_n", 0.0 if nodes_ok else 1.0, 0.0),
    ]
    params = next(iter(molecules), None)
    if params is not None:
        pek = oracle.eigenvalues_pekeris(params, 10, 1)[0]
        ext = oracle.eigenvalues_exact(params, 10, 1)[0]
        checks.append(Check(f"oracle.{params.name}_pekeris_gap_l10_n0", abs(ext - pek), math.inf, True,
                            f"exact {ext:.6f} eV vs pekeris {pek:.6f} eV", gating=False))
        wide = oracle.GridSpec(-0.8, 24.0, 16000)
        shift = abs(oracle.eigenvalues_pekeris(params, 0, 1, wide)[0] - oracle.eigenvalues_pekeris(params, 0, 1)[0])
        checks.append(Check(f"oracle.{params.name}_xmax_doubling_shift", shift, math.inf, True,
                            "E(0,0) change when x_max 12 -> 24, eV", gating=False))
    return checks


def suite_moment() -> list[Check]:
    exact = 0.0
    corrected = 0.0
    printed = 0.0
    for n in range(7):
        for mu in (0.5, 2.0, 7.3):
            q = wavefunction.moment_quadrature(n, mu, -1.0)
            want = math.exp(ln_gamma(mu + n + 1) - ln_gamma(n + 1)) / mu
            exact = max(exact, abs(q - want) / want)
            for nu in (-1.0, -0.5, 0.0, 1.5):
                cmp = wavefunction.compare_moment(n, mu, nu)
                corrected = max(corrected, cmp.corrected_rel_error)
                printed = max(printed, cmp.printed_rel_error)
    return [
        _check("moment.nu_minus_one_exact", exact, 1e-8, "Gamma(mu+n+1)/(mu n!)"),
        _check("moment.closed_form_gamma_mu_k", corrected, 1e-8, "sum with Gamma(mu+k+1)"),
        Check("moment.closed_form_as_printed", printed, 1e-8, printed <= 1e-8,
              "matches quadrature" if printed <= 1e-8 else "DISAGREES with quadrature (Gamma(n+k+1) factor)",
              gating=False),
    ]


def run(suite: str, molecules: list[MoleculeParams] | None = None) -> list[Check]:
    molecules = molecules if molecules is not None else default_molecules()
    runners: dict[str, Callable[[], list[Check]]] = {
        "pekeris": lambda: suite_pekeris(molecules),
        "specfun": suite_specfun,
        "spectrum": lambda: suite_spectrum(molecules) + (suite_tables() if molecules_are_builtin(molecules) else []),
        "norm": lambda: suite_norm(molecules),
        "icr": lambda: suite_icr(molecules),
        "oracle": lambda: suite_oracle(molecules),
        "moment": suite_moment,
    }
    if suite == "all":
        return [c for name in SUITES for c in runners[name]()]
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}")
    return runners[suite]()


def molecules_are_builtin(molecules: list[MoleculeParams]) -> bool:
    try:
        return molecules == default_molecules()
    except (KeyError, OSError, ValueError):
        return False
