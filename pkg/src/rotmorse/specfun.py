"""Real special functions: log-gamma, beta, Pochhammer, Laguerre and Kummer's 1F1."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

KUMMER_RTOL = 1e-16
KUMMER_MAX_TERMS = 10_000


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def ln_beta(p: float, q: float) -> float:
    if not (p > 0 and q > 0):
        raise ValueError(f"beta requires p, q > 0, got p={p!r}, q={q!r}")
    # Sorted so that beta(p, q) and beta(q, p) follow the identical float path.
    a, b = sorted((p, q))
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)


def beta(p: float, q: float) -> float:
    """Euler's beta function Gamma(p)Gamma(q)/Gamma(p+q)."""
    return math.exp(ln_beta(p, q))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError("pochhammer requires k >= 0")
    result = 1.0
    for j in range(k):
        result *= a + j
    return result


def laguerre(n: int, a: float, x):
    """Generalized Laguerre polynomial L_n^(a)(x) by upward recurrence.

    ``x`` may be a scalar or an array; the result has the same shape.
    """
    if n < 0:
        raise ValueError("laguerre requires n >= 0")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def _nonpositive_int(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def kummer_1f1(a: float, b: float, x: float) -> float:
    """Confluent hypergeometric function 1F1(a; b; x) from its Kummer series.

    A terminating series (``a`` a non-positive integer) is summed exactly in
    rational arithmetic and rounded once: for large ``x`` the alternating
    terms cancel by many orders of magnitude, which plain float summation
    does not survive. Non-terminating series with ``x < 0`` go through
    Kummer's transformation 1F1(a;b;x) = e^x 1F1(b-a;b;-x).

    Raises
    ------
    ValueError
        If ``b`` is a non-positive integer reached before the series ends,
        or the series fails to converge within ``KUMMER_MAX_TERMS`` terms.
    """
    if _nonpositive_int(a):
        m = int(-a)
        if _nonpositive_int(b) and m > -b:
            raise ValueError(f"1F1 pole: b={b!r} is hit before the series terminates at k={m}")
        return _terminating_1f1(m, b, x)
    if _nonpositive_int(b):
        raise ValueError(f"1F1 undefined for non-positive integer b={b!r}")
    if x < 0:
        return math.exp(x) * _series_1f1(b - a, b, -x)
    return _series_1f1(a, b, x)


def _terminating_1f1(m: int, b: float, x: float) -> float:
    fb, fx = Fraction(b), Fraction(x)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(m):
        term *= Fraction(k - m) * fx / ((fb + k) * (k + 1))
        total += term
    return float(total)


def _series_1f1(a: float, b: float, x: float) -> float:
    if _nonpositive_int(a):
        return _terminating_1f1(int(-a), b, x)
    term = 1.0
    total = 1.0
    # Terms may shrink transiently before (a+k) or (b+k) change sign, or
    # before k passes |x|; only stop once past both.
    settle = max(0.0, -a, -b, abs(x))
    for k in range(KUMMER_MAX_TERMS):
        term *= (a + k) / (b + k) * x / (k + 1)
        total += term
        if k + 1 > settle and abs(term) <= KUMMER_RTOL * abs(total):
            return total
    raise ValueError(f"1F1({a!r}; {b!r}; {x!r}) did not converge in {KUMMER_MAX_TERMS} terms")
