"""Closed-form bound-state spectrum of the Pekeris rotating Morse problem.

In the reduced variable x the radial equation reads

    R'' - beta2^2 e^{-2 alpha x} R + beta1^2 e^{-alpha x} R - eps^2 R = 0,

and quantization p = -n fixes eps, hence E = gamma a0 - eps^2 / Lambda0^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from rotmorse.core import MoleculeParams
from rotmorse.pekeris import pekeris_coefficients

CONSISTENCY_RTOL = 1e-12


class NoBoundSpectrumError(ValueError):
    """The Pekeris-transformed well has no binding region for this l."""


class UnboundStateError(ValueError):
    """The requested vibrational level lies above the dissociation threshold."""


@dataclass(frozen=True)
class SpectralParams:
    """Coefficients of the transformed radial equation.

    The state-dependent part (``epsilon`` and everything derived from it) is
    only available once ``epsilon`` is set, see :meth:`with_epsilon`.
    """

    beta1_sq: float
    beta2_sq: float
    lambda0_sq: float
    alpha: float
    gamma: float = 0.0
    a0: float = 0.0
    epsilon: float | None = None

    @property
    def beta2(self) -> float:
        return math.sqrt(self.beta2_sq)

    @property
    def half_width(self) -> float:
        """beta2 / alpha: the kernel's branch points sit at +-half_width."""
        return self.beta2 / self.alpha

    @property
    def lam(self) -> float:
        return 2.0 * self.beta2 / self.alpha

    @property
    def level_ratio(self) -> float:
        """beta1^2 / (2 alpha beta2); levels exist for n + 1/2 below this."""
        return self.beta1_sq / (2.0 * self.alpha * self.beta2)

    def _eps(self) -> float:
        if self.epsilon is None:
            raise ValueError("state-dependent quantity requested but epsilon is not set")
        return self.epsilon

    @property
    def kappa(self) -> float:
        return self._eps() / self.alpha

    @property
    def p(self) -> float:
        return self.kappa + 0.5 - self.level_ratio

    @property
    def q(self) -> float:
        return self.kappa + 0.5 + self.level_ratio

    def with_epsilon(self, epsilon: float) -> SpectralParams:
        return replace(self, epsilon=epsilon)


@dataclass(frozen=True)
class BoundState:
    n: int
    l: int
    energy: float
    normalization: float


def spectral_setup(params: MoleculeParams, l: int) -> SpectralParams:
    """State-independent coefficients for angular momentum ``l``.

    Raises
    ------
    NoBoundSpectrumError
        When V0 + gamma a2 <= 0 or 2 V0 - gamma a1 <= 0.
    """
    exp = pekeris_coefficients(params, l)
    lam0_sq = params.lambda0_sq
    wall = params.V0 + exp.gamma * exp.a2
    well = 2.0 * params.V0 - exp.gamma * exp.a1
    if wall <= 0 or well <= 0:
        raise NoBoundSpectrumError(
            f"no Pekeris bound spectrum for {params.name} at l={l} "
            f"(V0 + gamma a2 = {wall:.6g}, 2 V0 - gamma a1 = {well:.6g})"
        )
    return SpectralParams(
        beta1_sq=lam0_sq * well,
        beta2_sq=lam0_sq * wall,
        lambda0_sq=lam0_sq,
        alpha=params.alpha,
        gamma=exp.gamma,
        a0=exp.a0,
    )


def bound_count(sp: SpectralParams) -> int:
    """Number of n >= 0 with n < beta1^2/(2 alpha beta2) - 1/2."""
    limit = sp.level_ratio - 0.5
    return max(0, math.ceil(limit))


def max_bound_n(params: MoleculeParams, l: int) -> int:
    """How many vibrational levels are bound for this ``l`` (a count, not an index)."""
    return bound_count(spectral_setup(params, l))


def epsilon_of_n(sp: SpectralParams, n: int) -> float:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    eps = sp.beta1_sq / (2.0 * sp.beta2) - sp.alpha * (n + 0.5)
    if eps <= 0:
        raise UnboundStateError(f"state n={n} not bound (epsilon = {eps:.6g})")
    return eps


def state_params(sp: SpectralParams, n: int) -> SpectralParams:
    return sp.with_epsilon(epsilon_of_n(sp, n))


def energy_from_epsilon(sp: SpectralParams, epsilon: float) -> float:
    return sp.gamma * sp.a0 - epsilon**2 / sp.lambda0_sq


def energy(params: MoleculeParams, n: int, l: int) -> float:
    """Bound-state energy E_{n,l} in eV.

    Evaluated from the closed form
    ``-hbar^2/(8 m r0^2) [beta1^2/beta2 - (2n+1) alpha]^2 + gamma a0`` and
    cross-checked against ``gamma a0 - eps^2/Lambda0^2``.
    """
    sp = spectral_setup(params, l)
    eps = epsilon_of_n(sp, n)
    bracket = sp.beta1_sq / sp.beta2 - (2 * n + 1) * sp.alpha
    e = -bracket**2 / (4.0 * sp.lambda0_sq) + sp.gamma * sp.a0
    other = energy_from_epsilon(sp, eps)
    if abs(e - other) > CONSISTENCY_RTOL * abs(e):
        raise ArithmeticError(f"energy forms disagree: {e!r} vs {other!r}")
    return e


def energies(params: MoleculeParams, ns, ls) -> dict[tuple[int, int], float | None]:
    """Energies on an (n, l) grid; unbound or unsupported states map to None."""
    out: dict[tuple[int, int], float | None] = {}
    for l in ls:
        for n in ns:
            try:
                out[(n, l)] = energy(params, n, l)
            except (UnboundStateError, NoBoundSpectrumError):
                out[(n, l)] = None
    return out


def morse_s_wave(params: MoleculeParams, n: int) -> float:
    """Textbook l = 0 Morse level -V0 [1 - (n + 1/2) alpha / (Lambda0 sqrt(V0))]^2."""
    s = (n + 0.5) * params.alpha / (params.lambda0 * math.sqrt(params.V0))
    return -params.V0 * (1.0 - s) ** 2


def bound_state(params: MoleculeParams, n: int, l: int) -> BoundState:
    from rotmorse.wavefunction import normalization_constant

    sp = state_params(spectral_setup(params, l), n)
    return BoundState(n, l, energy(params, n, l), normalization_constant(sp, n))
