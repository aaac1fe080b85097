"""Morse potential, exact and Pekeris-approximated centrifugal terms.

Positions are either the reduced displacement ``x = (r - r0)/r0`` or the
bond length ``r`` in angstrom; energies are in eV.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from rotmorse.core import MoleculeParams


@dataclass(frozen=True)
class PekerisExpansion:
    """gamma * (a0 + a1 e^{-alpha x} + a2 e^{-2 alpha x}) stand-in for l(l+1)hbar^2/(2 m r^2)."""

    gamma: float
    a0: float
    a1: float
    a2: float


def morse_potential(x, params: MoleculeParams):
    u = np.exp(-params.alpha * np.asarray(x, dtype=float))
    v = params.V0 * (u * u - 2.0 * u)
    return v if v.ndim else float(v)


def expansion_coefficients(alpha: float) -> tuple[float, float, float]:
    inv = 1.0 / alpha
    inv2 = inv * inv
    return 1.0 - 3.0 * inv + 3.0 * inv2, 4.0 * inv - 6.0 * inv2, -inv + 3.0 * inv2


def pekeris_coefficients(params: MoleculeParams, l: int) -> PekerisExpansion:
    if l < 0:
        raise ValueError(f"l must be non-negative, got {l}")
    a0, a1, a2 = expansion_coefficients(params.alpha)
    return PekerisExpansion(l * (l + 1) * params.rotational_unit, a0, a1, a2)


def exact_centrifugal(x, gamma: float):
    """gamma / (1 + x)^2, the centrifugal term written in the reduced variable."""
    x = np.asarray(x, dtype=float)
    v = gamma / (1.0 + x) ** 2
    return v if v.ndim else float(v)


def approx_centrifugal(x, exp: PekerisExpansion, alpha: float):
    u = np.exp(-alpha * np.asarray(x, dtype=float))
    v = exp.gamma * (exp.a0 + exp.a1 * u + exp.a2 * u * u)
    return v if v.ndim else float(v)


def effective_potential(
    r,
    params: MoleculeParams,
    l: int,
    mode: Literal["exact", "pekeris"] = "exact",
):
    """Morse plus centrifugal potential at bond length ``r`` (angstrom).

    ``mode="exact"`` uses the true 1/r^2 barrier and requires ``r > 0``;
    ``mode="pekeris"`` uses the exponential expansion and is defined for all r.
    """
    r = np.asarray(r, dtype=float)
    x = (r - params.r0) / params.r0
    exp = pekeris_coefficients(params, l)
    if mode == "exact":
        if np.any(r <= 0):
            raise ValueError("exact effective potential requires r > 0")
        cent = exact_centrifugal(x, exp.gamma)
    elif mode == "pekeris":
        cent = approx_centrifugal(x, exp, params.alpha)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    v = np.asarray(cent) + np.asarray(morse_potential(x, params))
    return v if v.ndim else float(v)


def approximation_gap(r: float, params: MoleculeParams, l: int) -> tuple[float, float, float]:
    """(exact, pekeris, relative gap) of the effective potential at ``r``."""
    exact = effective_potential(r, params, l, "exact")
    approx = effective_potential(r, params, l, "pekeris")
    return exact, approx, abs(approx - exact) / abs(exact)
