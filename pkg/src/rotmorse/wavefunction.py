"""Normalized radial wavefunctions and the Laguerre moment integral.

A bound state in the variable xi = exp(-alpha x) is

    R(xi) = C xi^kappa exp(-lam xi / 2) L_n^(2 kappa)(lam xi),

with kappa = eps/alpha and lam = 2 beta2/alpha. Everything that can
overflow (C itself is ~e^400 for CO) is carried in the log domain.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Literal

import numpy as np
from scipy import integrate

from rotmorse.core import MoleculeParams
from rotmorse.spectrum import SpectralParams, spectral_setup, state_params
from rotmorse.specfun import laguerre, ln_gamma, pochhammer

DEFAULT_POINTS = 2000
DEFAULT_R_RANGE = (0.3, 5.0)  # in units of r0

# Relative level below which the integrand is treated as zero.
TAIL = 1e-24
QUAD_RTOL = 1e-12
QUAD_ACCEPT = 1e-10
MOMENT_RTOL = 1e-8


class QuadratureError(RuntimeError):
    def __init__(self, message: str, estimate: float, error: float):
        self.estimate = estimate
        self.error = error
        super().__init__(f"{message} (estimate {estimate!r}, error {error:.3g})")


class MomentMismatchError(AssertionError):
    pass


@dataclass(frozen=True)
class WavefunctionSamples:
    molecule: str
    n: int
    l: int
    grid: np.ndarray
    values: np.ndarray
    norm_estimate: float

    def __post_init__(self) -> None:
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values differ in length")
        if np.any(self.grid <= 0) or np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing and positive")

    def to_csv(self) -> str:
        lines = ["r_angstrom,R"]
        lines.extend(f"{r:.12g},{v:.12g}" for r, v in zip(self.grid, self.values))
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | os.PathLike) -> None:
        """Write atomically: a temporary sibling file is renamed into place."""
        path = Path(path)
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(self.to_csv())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _state(sp: SpectralParams, n: int) -> SpectralParams:
    if sp.epsilon is None:
        return state_params(sp, n)
    if sp.epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {sp.epsilon!r}")
    return sp


def log_normalization_constant(sp: SpectralParams, n: int) -> float:
    sp = _state(sp, n)
    eps, kappa = sp.epsilon, sp.kappa
    return kappa * math.log(sp.lam) + 0.5 * (
        math.log(2.0 * eps) + ln_gamma(n + 1) - ln_gamma(2.0 * kappa + n + 1)
    )


def normalization_constant(sp: SpectralParams, n: int) -> float:
    """C = lam^kappa sqrt(2 eps n! / Gamma(2 kappa + n + 1)).

    If ``sp`` carries no epsilon, the quantized value for level ``n`` is used.
    May return ``inf`` for extreme parameters; use
    :func:`log_normalization_constant` in that case.
    """
    return math.exp(log_normalization_constant(sp, n))


def radial_from_x(sp: SpectralParams, n: int, x, scale: float = 1.0):
    """R at reduced displacement ``x`` (vectorized); ``scale`` multiplies C."""
    sp = _state(sp, n)
    x = np.asarray(x, dtype=float)
    log_c = log_normalization_constant(sp, n) + math.log(scale)
    with np.errstate(over="ignore", invalid="ignore"):
        xi = np.exp(-sp.alpha * x)
        log_env = log_c - sp.kappa * sp.alpha * x - 0.5 * sp.lam * xi
        env = np.exp(log_env)
        poly = laguerre(n, 2.0 * sp.kappa, sp.lam * xi)
        out = np.where(env > 0, env * poly, 0.0)
    return out if out.ndim else float(out)


def radial_from_xi(sp: SpectralParams, n: int, xi, scale: float = 1.0):
    xi = np.asarray(xi, dtype=float)
    with np.errstate(divide="ignore"):
        x = -np.log(xi) / sp.alpha
    return radial_from_x(sp, n, x, scale)


def default_grid(params: MoleculeParams, points: int = DEFAULT_POINTS) -> np.ndarray:
    lo, hi = DEFAULT_R_RANGE
    return np.linspace(lo * params.r0, hi * params.r0, points)


def radial_wavefunction(params: MoleculeParams, n: int, l: int, grid=None) -> WavefunctionSamples:
    """Sample R_{n,l} on bond lengths ``grid`` (angstrom)."""
    sp = state_params(spectral_setup(params, l), n)
    r = default_grid(params) if grid is None else np.asarray(grid, dtype=float)
    if r.ndim != 1 or r.size < 2:
        raise ValueError("grid must be a 1-D array with at least two points")
    values = radial_from_x(sp, n, (r - params.r0) / params.r0)
    r = r.copy()
    r.flags.writeable = False
    values.flags.writeable = False
    return WavefunctionSamples(params.name, n, l, r, values, norm_integral(sp, n))


def node_count(values) -> int:
    """Sign changes, ignoring samples negligible against the peak."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > 1e-10 * np.max(np.abs(v))]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def _gamma_type_integral(
    integrand: Callable[[np.ndarray], np.ndarray],
    power: float,
    scale_hint: float,
    regular: Callable[[np.ndarray], np.ndarray] | None = None,
) -> tuple[float, float]:
    """Integrate a positive-ish integrand on (0, inf) that behaves like
    phi^power e^{-phi} times a polynomial.

    The support is located on a dense probe grid, trimmed where the integrand
    drops below ``TAIL`` of its peak, and split into pieces for adaptive
    Gauss-Kronrod. For ``power < 0`` the first piece uses the algebraic
    endpoint weight phi^power with ``regular`` (the integrand divided by it).
    """
    top = scale_hint + 40.0 * math.sqrt(scale_hint + 1.0) + 60.0
    while True:
        probe = np.linspace(0.0, top, 8001)[1:]
        vals = np.abs(integrand(probe))
        peak = float(np.max(vals))
        if not np.isfinite(peak) or peak == 0:
            raise QuadratureError("integrand not finite or identically zero", float("nan"), float("inf"))
        if vals[-1] < TAIL * peak:
            break
        top *= 2.0
    alive = np.nonzero(vals >= TAIL * peak)[0]
    step = probe[1] - probe[0]
    lo = 0.0 if power < 0 else max(0.0, probe[alive[0]] - step)
    hi = probe[min(alive[-1] + 1, probe.size - 1)]

    pieces = max(8, int(math.ceil(math.sqrt(scale_hint))) + 4)
    edges = np.linspace(lo, hi, pieces + 1)
    # Absolute floor so that negligible tail pieces do not chase relative accuracy.
    floor = 1e-17 * peak * (hi - lo)
    total = 0.0
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if a == 0.0 and power < 0:
            assert regular is not None
            val, e = integrate.quad(
                lambda t: float(regular(np.array(t))), a, b,
                weight="alg", wvar=(power, 0.0), epsabs=floor, epsrel=QUAD_RTOL, limit=200,
            )
        else:
            val, e = integrate.quad(
                lambda t: float(integrand(np.array(t))), a, b,
                epsabs=floor, epsrel=QUAD_RTOL, limit=200,
            )
        total += val
        err += e
    if not err <= QUAD_ACCEPT * max(abs(total), 1e-300):
        raise QuadratureError("quadrature did not converge", total, err)
    return total, err


def norm_integral(state, n: int | None = None, scale: float = 1.0, r0: float | None = None) -> float:
    """Norm of a bound state over the whole line in x.

    ``state`` is either a :class:`SpectralParams` together with ``n``, or
    :class:`WavefunctionSamples` together with the molecule's ``r0``.

    For the analytic form the integral int R(xi)^2/(alpha xi) dxi is
    evaluated adaptively in phi = lam xi, and ``scale`` multiplies the
    normalization constant. Samples are integrated with Simpson's rule in
    x = (r - r0)/r0 over their own grid, so the result is only as good as
    the grid's coverage of the tails.

    Raises
    ------
    QuadratureError
        If the adaptive error estimate exceeds ``QUAD_ACCEPT`` relative.
    """
    if isinstance(state, WavefunctionSamples):
        if r0 is None:
            raise TypeError("r0 is required to integrate sampled values")
        return scale**2 * float(integrate.simpson(state.values**2, x=state.grid / r0))
    if n is None:
        raise TypeError("n is required for an analytic state")
    sp = _state(state, n)
    lam, alpha, kappa = sp.lam, sp.alpha, sp.kappa
    power = 2.0 * kappa - 1.0

    def integrand(phi):
        return radial_from_xi(sp, n, phi / lam, scale) ** 2 / (alpha * phi)

    def regular(phi):
        # R^2 ~ phi^(2 kappa); peel that off for the algebraic-weight piece.
        with np.errstate(divide="ignore", invalid="ignore"):
            xi = phi / lam
            log_env = 2.0 * (log_normalization_constant(sp, n) + math.log(scale)) - 2.0 * kappa * math.log(lam) - lam * xi
            poly = laguerre(n, 2.0 * kappa, phi)
        return np.exp(log_env) * poly**2 / alpha

    value, _ = _gamma_type_integral(integrand, power, 2.0 * kappa + 4.0 * n + 2.0, regular)
    return value


def quadrature_cutoffs(sp: SpectralParams, n: int) -> tuple[float, float]:
    """Bond-length offsets x where |R| has fallen to negligible size on both sides.

    Returned as reduced displacements (x_left, x_right) at which the
    normalization integrand is below ``TAIL`` of its peak.
    """
    sp = _state(sp, n)
    phi = np.linspace(0.0, 2.0 * sp.kappa + 4.0 * n + 200.0 + 40.0 * math.sqrt(2 * sp.kappa + 4 * n + 2), 200001)[1:]
    dens = radial_from_xi(sp, n, phi / sp.lam) ** 2 / (sp.alpha * phi)
    alive = np.nonzero(dens >= TAIL * dens.max())[0]
    phi_lo = phi[max(alive[0] - 1, 0)]
    phi_hi = phi[min(alive[-1] + 1, phi.size - 1)]
    # Large phi means small x (left wall); small phi means the right tail.
    x_left = -math.log(phi_hi / sp.lam) / sp.alpha
    x_right = -math.log(phi_lo / sp.lam) / sp.alpha
    return x_left, x_right


# --- Laguerre moment -------------------------------------------------------

def _moment_closed_form(n: int, mu: float, nu: float, variant: Literal["printed", "corrected"]) -> float:
    if not mu + nu + 1 > 0:
        raise ValueError("moment requires mu + nu + 1 > 0")
    terms = []
    for k in range(n + 1):
        # Gamma(n - k - nu) / Gamma(-k - nu) as the finite product (-k - nu)_n.
        ratio = pochhammer(-k - nu, n)
        if ratio == 0:
            continue
        last = ln_gamma(n + k + 1) if variant == "printed" else ln_gamma(mu + k + 1)
        log_mag = (
            math.log(abs(ratio))
            - ln_gamma(n - k + 1)
            + ln_gamma(mu + nu + k + 1)
            - ln_gamma(k + 1)
            - last
        )
        sign = (-1) ** k * (1 if ratio > 0 else -1)
        terms.append(sign * math.exp(log_mag))
    prefactor = math.exp(ln_gamma(mu + n + 1) - ln_gamma(n + 1))
    return prefactor * math.fsum(terms)


def moment_closed_form_printed(n: int, mu: float, nu: float) -> float:
    """Double-sum formula exactly as commonly printed, with Gamma(n+k+1) last."""
    return _moment_closed_form(n, mu, nu, "printed")


def moment_closed_form(n: int, mu: float, nu: float) -> float:
    """Same sum with Gamma(mu+k+1) in place of Gamma(n+k+1).

    Follows from expanding one L_n^(mu) as a power series and integrating
    each power against the other with the Mellin transform
    int x^(s-1) e^-x L_n^(mu)(x) dx = Gamma(s) (mu - s + 1)_n / n!.
    """
    return _moment_closed_form(n, mu, nu, "corrected")


def moment_quadrature(n: int, mu: float, nu: float) -> float:
    s = mu + nu
    if not s + 1 > 0:
        raise ValueError("moment requires mu + nu + 1 > 0")

    def integrand(t):
        with np.errstate(divide="ignore"):
            return np.exp(s * np.log(t) - t) * laguerre(n, mu, t) ** 2

    def regular(t):
        return np.exp(-t) * laguerre(n, mu, t) ** 2

    value, _ = _gamma_type_integral(integrand, s, s + 4.0 * n + 2.0, regular)
    return value


def laguerre_moment(
    n: int,
    mu: float,
    nu: float,
    check: Literal["corrected", "printed"] | None = "corrected",
    rtol: float = MOMENT_RTOL,
) -> float:
    """int_0^inf xi^(mu+nu) e^-xi [L_n^(mu)(xi)]^2 dxi by adaptive quadrature.

    The quadrature value is returned; with ``check`` set it must agree with
    the chosen closed form to ``rtol`` or :class:`MomentMismatchError` is raised.
    """
    quad = moment_quadrature(n, mu, nu)
    if check is not None:
        closed = _moment_closed_form(n, mu, nu, check)
        if abs(closed - quad) > rtol * abs(quad):
            raise MomentMismatchError(
                f"{check} closed form {closed!r} != quadrature {quad!r} for n={n}, mu={mu}, nu={nu}"
            )
    return quad


@dataclass(frozen=True)
class MomentComparison:
    n: int
    mu: float
    nu: float
    quadrature: float
    printed: float
    corrected: float

    @property
    def printed_rel_error(self) -> float:
        return abs(self.printed - self.quadrature) / abs(self.quadrature)

    @property
    def corrected_rel_error(self) -> float:
        return abs(self.corrected - self.quadrature) / abs(self.quadrature)


def compare_moment(n: int, mu: float, nu: float) -> MomentComparison:
    return MomentComparison(
        n, mu, nu,
        moment_quadrature(n, mu, nu),
        moment_closed_form_printed(n, mu, nu),
        moment_closed_form(n, mu, nu),
    )
