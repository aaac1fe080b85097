"""Finite-difference eigensolver for the radial equation, independent of the closed form.

In x = (r - r0)/r0 the radial equation is

    -R'' + Lambda0^2 V(x) R = Lambda0^2 E R,

discretized with second-order central differences and Dirichlet ends. The
eigenvalues of the symmetric tridiagonal matrix at step h and h/2 are
combined by Richardson extrapolation, (4 E_{h/2} - E_h) / 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.linalg import eigh_tridiagonal

from rotmorse.core import MoleculeParams
from rotmorse.pekeris import effective_potential
from rotmorse.spectrum import max_bound_n

# Relative gap between the two resolutions beyond which results are rejected.
CONVERGENCE_RTOL = 1e-3


class UnconvergedError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [x_min, x_max] with ``num_points`` intervals (coarse level)."""

    x_min: float = -0.8
    x_max: float = 12.0
    num_points: int = 8000

    def __post_init__(self) -> None:
        if not self.x_min < 0 < self.x_max:
            raise ValueError("grid must satisfy x_min < 0 < x_max")
        if self.num_points < 1000:
            raise ValueError("num_points must be >= 1000")

    @classmethod
    def from_r(cls, r_min: float, r_max: float, r0: float, num_points: int = 8000) -> GridSpec:
        """Grid given in bond lengths (angstrom)."""
        if not r_min > 0:
            raise ValueError("r_min must be positive")
        return cls(r_min / r0 - 1.0, r_max / r0 - 1.0, num_points)

    def interior(self, refine: int = 1) -> np.ndarray:
        m = self.num_points * refine
        h = (self.x_max - self.x_min) / m
        return self.x_min + h * np.arange(1, m)


@dataclass(frozen=True)
class OracleResult:
    energies: np.ndarray
    coarse: np.ndarray
    fine: np.ndarray
    x: np.ndarray
    vectors: np.ndarray  # fine-grid eigenvectors, one column per level

    def node_counts(self) -> list[int]:
        counts = []
        for col in self.vectors.T:
            v = col[np.abs(col) > 1e-8 * np.max(np.abs(col))]
            counts.append(int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1]))))
        return counts


def _lowest(potential: np.ndarray, h: float, count: int, vectors: bool):
    diag = 2.0 / h**2 + potential
    off = np.full(potential.size - 1, -1.0 / h**2)
    return eigh_tridiagonal(
        diag, off, eigvals_only=not vectors, select="i", select_range=(0, count - 1)
    )


def solve(
    params: MoleculeParams,
    l: int,
    count: int,
    grid: GridSpec | None = None,
    mode: Literal["pekeris", "exact"] = "pekeris",
) -> OracleResult:
    """Lowest ``count`` levels of the effective potential in the given mode."""
    grid = grid or GridSpec()
    if mode == "exact" and grid.x_min <= -1.0:
        raise ValueError("exact mode needs r_min > 0, i.e. x_min > -1")
    if count == 0:
        empty = np.empty(0)
        return OracleResult(empty, empty, empty, grid.interior(2), np.empty((grid.num_points * 2 - 1, 0)))
    lam0_sq = params.lambda0_sq
    levels = []
    for refine in (1, 2):
        x = grid.interior(refine)
        h = x[1] - x[0]
        v = lam0_sq * effective_potential(params.r0 * (1.0 + x), params, l, mode)
        levels.append(_lowest(v, h, count, vectors=refine == 2))
    coarse = levels[0] / lam0_sq
    fine_vals, vecs = levels[1]
    fine = fine_vals / lam0_sq
    gap = np.abs(fine - coarse) / np.abs(fine)
    if np.any(gap > CONVERGENCE_RTOL):
        raise UnconvergedError(f"two-resolution disagreement {gap.max():.3g} exceeds {CONVERGENCE_RTOL}")
    extrapolated = (4.0 * fine - coarse) / 3.0
    return OracleResult(extrapolated, coarse, fine, grid.interior(2), vecs)


def eigenvalues_pekeris(params: MoleculeParams, l: int, count: int, grid: GridSpec | None = None) -> list[float]:
    """Lowest ``count`` energies (eV) of the Pekeris-approximated problem."""
    bound = max_bound_n(params, l)
    if count > bound:
        raise ValueError(f"count={count} exceeds the {bound} bound levels for l={l}")
    return solve(params, l, count, grid, "pekeris").energies.tolist()


def eigenvalues_exact(params: MoleculeParams, l: int, count: int, grid: GridSpec | None = None) -> list[float]:
    """Lowest ``count`` energies (eV) with the true centrifugal barrier.

    The grid must keep r > 0; only used to gauge the Pekeris approximation.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    return solve(params, l, count, grid, "exact").energies.tolist()
