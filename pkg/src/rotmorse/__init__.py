"""Bound states of the rotating Morse potential in the Pekeris approximation."""

from rotmorse.core import (
    MoleculeParams,
    QuantumNumbers,
    ReferenceTable,
    builtin_molecule,
    builtin_reference_tables,
    load_molecule,
)
from rotmorse.spectrum import BoundState, SpectralParams, energy, max_bound_n, spectral_setup
from rotmorse.wavefunction import WavefunctionSamples, norm_integral, radial_wavefunction

__all__ = [
    "BoundState",
    "MoleculeParams",
    "QuantumNumbers",
    "ReferenceTable",
    "SpectralParams",
    "WavefunctionSamples",
    "builtin_molecule",
    "builtin_reference_tables",
    "energy",
    "load_molecule",
    "max_bound_n",
    "norm_integral",
    "radial_wavefunction",
    "spectral_setup",
]
