"""Physical constants, molecule parameters and the embedded reference tables.

Units are fixed: energies in eV, lengths in angstrom, masses in amu.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

# CODATA 2018.
HBARC_EV_ANGSTROM = 1973.269804
AMU_EV = 931.49410242e6

DATA_DIR_ENV = "MORSE_DATA_DIR"
REFERENCE_CSV = "reference_tables.csv"

PARAM_KEYS = ("name", "V0_eV", "r0_angstrom", "alpha", "reduced_mass_amu")

METHODS = ("ICR", "SUSY", "AIM", "Variational", "SNE", "EQR", "NU", "MSNE")

# Table number -> molecule, in the order the tables are printed.
TABLE_MOLECULES = {1: "H2", 2: "CO", 3: "HCl", 4: "LiH"}


class ParameterFileError(ValueError):
    """Malformed molecule parameter file."""

    def __init__(self, message: str, path: str | os.PathLike | None = None, lineno: int | None = None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = f"{path}:"
            if lineno is not None:
                where += f"{lineno}:"
            where += " "
        super().__init__(where + message)


class ValidationError(ValueError):
    """A physical parameter violates its invariant."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass(frozen=True)
class MoleculeParams:
    """Morse parameters of one diatomic species.

    ``alpha`` is the dimensionless width ``a * r0``.
    """

    name: str
    V0: float
    r0: float
    alpha: float
    reduced_mass: float

    def __post_init__(self) -> None:
        for field in ("V0", "r0", "alpha", "reduced_mass"):
            value = getattr(self, field)
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(field, f"must be finite and positive, got {value!r}")

    @property
    def mass_ev(self) -> float:
        """Reduced mass energy m c^2 in eV."""
        return self.reduced_mass * AMU_EV

    @property
    def lambda0_sq(self) -> float:
        """2 m r0^2 / hbar^2 in 1/eV."""
        return 2.0 * self.mass_ev * self.r0**2 / HBARC_EV_ANGSTROM**2

    @property
    def lambda0(self) -> float:
        return math.sqrt(self.lambda0_sq)

    @property
    def rotational_unit(self) -> float:
        """hbar^2 / (2 m r0^2) in eV, so that gamma = l(l+1) times this."""
        return 1.0 / self.lambda0_sq


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise ValueError(f"quantum numbers must be non-negative, got n={self.n}, l={self.l}")


@dataclass(frozen=True)
class ReferenceTable:
    molecule: str
    method: str
    entries: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        seen = set()
        for n, l, energy in self.entries:
            if (n, l) in seen:
                raise ValueError(f"duplicate entry ({self.molecule}, {self.method}, {n}, {l})")
            seen.add((n, l))
            if not energy < 0:
                raise ValueError(f"non-negative energy for ({self.molecule}, {self.method}, {n}, {l})")

    def lookup(self, n: int, l: int) -> float:
        for n_, l_, energy in self.entries:
            if n_ == n and l_ == l:
                return energy
        raise KeyError((self.molecule, self.method, n, l))

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(n, l): e for n, l, e in self.entries}


def data_dir() -> Path:
    """Directory holding molecule files and reference tables.

    Honours ``MORSE_DATA_DIR``; otherwise the files shipped with the package.
    """
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("rotmorse") / "data"))


def parse_molecule(text: str, path: str | os.PathLike | None = None) -> MoleculeParams:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterFileError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in PARAM_KEYS:
            raise ParameterFileError(f"unknown key {key!r}", path, lineno)
        if key in values:
            raise ParameterFileError(f"duplicate key {key!r}", path, lineno)
        if not value:
            raise ParameterFileError(f"empty value for {key!r}", path, lineno)
        if key != "name":
            try:
                float(value)
            except ValueError:
                raise ParameterFileError(f"{key} is not a number: {value!r}", path, lineno) from None
        values[key] = value

    missing = [k for k in PARAM_KEYS if k not in values]
    if missing:
        raise ParameterFileError(f"missing required key(s): {', '.join(missing)}", path)

    return MoleculeParams(
        name=values["name"],
        V0=float(values["V0_eV"]),
        r0=float(values["r0_angstrom"]),
        alpha=float(values["alpha"]),
        reduced_mass=float(values["reduced_mass_amu"]),
    )


def load_molecule(path: str | os.PathLike) -> MoleculeParams:
    """Read a ``key = value`` parameter file.

    Raises
    ------
    ParameterFileError
        On syntax errors (with line number) or missing keys.
    ValidationError
        When a value is not strictly positive.
    """
    return parse_molecule(Path(path).read_text(encoding="utf-8"), path)


def format_molecule(params: MoleculeParams) -> str:
    # repr() round-trips doubles exactly.
    return (
        f"name = {params.name}\n"
        f"V0_eV = {params.V0!r}\n"
        f"r0_angstrom = {params.r0!r}\n"
        f"alpha = {params.alpha!r}\n"
        f"reduced_mass_amu = {params.reduced_mass!r}\n"
    )


def save_molecule(params: MoleculeParams, path: str | os.PathLike) -> None:
    Path(path).write_text(format_molecule(params), encoding="utf-8")


def available_molecules() -> list[str]:
    return sorted(p.stem for p in data_dir().glob("*.txt"))


def builtin_molecule(name: str) -> MoleculeParams:
    """Load a shipped molecule by name (case-insensitive)."""
    for path in sorted(data_dir().glob("*.txt")):
        if path.stem.lower() == name.lower():
            return load_molecule(path)
    raise KeyError(f"unknown molecule {name!r}; available: {', '.join(available_molecules())}")


def read_reference_csv(path: str | os.PathLike) -> list[ReferenceTable]:
    grouped: dict[tuple[str, str], list[tuple[int, int, float]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            key = (row["molecule"], row["method"])
            grouped.setdefault(key, []).append((int(row["n"]), int(row["l"]), float(row["energy_eV"])))
    return [ReferenceTable(mol, method, tuple(rows)) for (mol, method), rows in grouped.items()]


def builtin_reference_tables() -> list[ReferenceTable]:
    """All transcribed energies (eV), one table per (molecule, method)."""
    return read_reference_csv(data_dir() / REFERENCE_CSV)


def reference_table(molecule: str, method: str = "ICR") -> ReferenceTable:
    for table in builtin_reference_tables():
        if table.molecule.lower() == molecule.lower() and table.method == method:
            return table
    raise KeyError((molecule, method))
