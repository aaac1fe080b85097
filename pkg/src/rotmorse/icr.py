"""Numerical checks of the contour-integral machinery behind the closed-form solution.

Covers the Laplace-kernel Q(t), the vanishing of its boundary term, the
beta-function contour identity for xi^k, the residue expansion of
(1 - xi u)^-n, and the collapse of the cut-encircling contour to the real
segment [0, 1] (an Euler integral equal to B(p,q) 1F1(p; p+q; s)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from rotmorse.spectrum import SpectralParams
from rotmorse.specfun import beta, kummer_1f1, pochhammer

EULER_TOL = 1e-9
RESIDUE_MARGIN = 0.8


class IdentityMismatchError(AssertionError):
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Circle |z - center| = radius sampled at ``num_points`` equispaced nodes."""

    center: complex = 0j
    radius: float = 1.0
    num_points: int = 256

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if self.num_points < 64:
            raise ValueError(f"num_points must be >= 64, got {self.num_points}")

    def nodes(self) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(self.num_points) / self.num_points
        return self.center + self.radius * np.exp(1j * theta)


def contour_mean(f, c: ContourSpec) -> complex:
    """(1 / 2 pi i) times the counterclockwise integral of f, trapezoid rule.

    With z = c + R e^{i theta}, dz / (2 pi i) = (z - c) dtheta / (2 pi).
    """
    z = c.nodes()
    return complex(np.sum(f(z) * (z - c.center)) / c.num_points)


# --- kernel ----------------------------------------------------------------

def log_kernel_Q(t, sp: SpectralParams):
    """log of (b - t)^(q-1) (b + t)^(p-1) with b = beta2/alpha, for |t| < b."""
    b = sp.half_width
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= b):
        raise ValueError(f"kernel_Q is real only for |t| < beta2/alpha = {b!r}")
    out = (sp.q - 1.0) * np.log(b - t) + (sp.p - 1.0) * np.log(b + t)
    return out if out.ndim else float(out)


def kernel_Q(t, sp: SpectralParams):
    """Laplace kernel up to its normalization constant."""
    out = np.exp(log_kernel_Q(t, sp))
    return out if np.ndim(out) else float(out)


def kernel_equation_residual(sp: SpectralParams, num_points: int = 50) -> float:
    """Max relative residual of (t^2 - b^2) Q' + [(1 - 2 eps/alpha) t - beta1^2/alpha^2] Q = 0.

    Q' comes from a five-point central difference, not from the closed form.
    Q is rescaled to 1 at each test point so huge exponents do not overflow.
    """
    b = sp.half_width
    ts = np.linspace(-b, b, num_points + 2)[1:-1]
    lin = 1.0 - 2.0 * sp.epsilon / sp.alpha
    const = sp.beta1_sq / sp.alpha**2
    worst = 0.0
    for t in ts:
        gap = b - abs(t)
        steep = 1.0 + abs(sp.p - 1.0) / (b + t) + abs(sp.q - 1.0) / (b - t)
        h = min(1e-3 * gap, 1e-2 / steep)
        ref = log_kernel_Q(t, sp)
        f = [math.exp(log_kernel_Q(t + k * h, sp) - ref) for k in (-2, -1, 1, 2)]
        dq = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
        a_term = (t * t - b * b) * dq
        b_term = lin * t - const
        worst = max(worst, abs(a_term + b_term) / (abs(a_term) + abs(b_term)))
    return worst


# --- boundary term ----------------------------------------------------------

def boundary_term(p: float, q: float, half_width: float, xi: float) -> float:
    """max |(b - t)^q (b + t)^p e^{xi t}| over the endpoints t = +-b.

    Zero when p, q > 0; ``inf`` when an exponent is negative.
    """
    b = half_width
    worst = 0.0
    # At t = +b the factor (b - t)^q vanishes, at t = -b the factor (b + t)^p.
    for vanishing, surviving, t in ((q, p, b), (p, q, -b)):
        if vanishing < 0:
            return math.inf
        if vanishing == 0:
            worst = max(worst, abs((2.0 * b) ** surviving * math.exp(xi * t)))
    return worst


def boundary_vanishing(sp: SpectralParams, xi: float) -> float:
    return boundary_term(sp.p, sp.q, sp.half_width, xi)


# --- contour identities -----------------------------------------------------

def contour_power_identity(k: int, n: int, xi: complex, c: ContourSpec) -> complex:
    """k B(k, n) (1/2 pi i) oint z^(n+k-1) / (z - xi)^n dz, which equals xi^k."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive integers")
    dist = abs(xi - c.center)
    if dist >= c.radius:
        raise ValueError("contour must enclose xi")
    if c.radius - dist < 2.0 / c.num_points:
        raise ValueError(f"xi lies within 2/num_points of the contour (gap {c.radius - dist:.3g})")
    integral = contour_mean(lambda z: z ** (n + k - 1) / (z - xi) ** n, c)
    return k * beta(k, n) * integral


def residue_series_check(k: int, n: int, xi: float, c: ContourSpec) -> complex:
    """(1/2 pi i) oint (1 - xi u)^-n / u^(k+1) du counterclockwise around u = 0.

    The inversion z = 1/u reverses orientation, which accounts for the
    leading minus sign of the clockwise form; here the counterclockwise value
    is compared directly against (n)_k / k! xi^k.

    Raises
    ------
    ValueError
        Unless the circle encloses 0 and (|center| + radius) |xi| <= 0.8.
    """
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if abs(c.center) >= c.radius:
        raise ValueError("contour must enclose u = 0")
    reach = (abs(c.center) + c.radius) * abs(xi)
    if reach > RESIDUE_MARGIN:
        raise ValueError(
            f"contour too close to the singularity u = 1/xi: (|center| + radius)|xi| = {reach:.3g} > {RESIDUE_MARGIN}"
        )
    return contour_mean(lambda u: (1.0 - xi * u) ** (-n) / u ** (k + 1), c)


def residue_expected(k: int, n: int, xi: float) -> float:
    return pochhammer(n, k) / math.factorial(k) * xi**k


def euler_integral_identity(p: float, q: float, s: float, tol: float = EULER_TOL) -> tuple[float, float]:
    """(int_0^1 z^(p-1) (1-z)^(q-1) e^(s z) dz,  B(p,q) 1F1(p; p+q; s)).

    The left side uses QUADPACK's algebraic-endpoint weight so that the
    z = 0 and z = 1 branch singularities are integrated exactly.

    Raises
    ------
    IdentityMismatchError
        If the sides differ by more than ``tol * max(1, |rhs|)``.
    """
    if not (p > 0 and q > 0):
        raise ValueError("need p, q > 0")
    lhs, err = integrate.quad(
        lambda z: math.exp(s * z), 0.0, 1.0,
        weight="alg", wvar=(p - 1.0, q - 1.0), epsabs=0.0, epsrel=1e-13, limit=200,
    )
    rhs = beta(p, q) * kummer_1f1(p, p + q, s)
    if err > 0.1 * tol * max(1.0, abs(rhs)):
        raise IdentityMismatchError(f"quadrature error estimate {err:.3g} too large")
    if abs(lhs - rhs) > tol * max(1.0, abs(rhs)):
        raise IdentityMismatchError(f"p={p}, q={q}, s={s}: {lhs!r} != {rhs!r}")
    return lhs, rhs
