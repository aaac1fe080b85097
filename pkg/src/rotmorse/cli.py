"""Command-line interface.

Exit codes: 0 success, 1 comparison or verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from rotmorse import spectrum, verify
from rotmorse.core import (
    TABLE_MOLECULES,
    MoleculeParams,
    ParameterFileError,
    ValidationError,
    builtin_molecule,
    load_molecule,
)
from rotmorse.wavefunction import DEFAULT_POINTS, DEFAULT_R_RANGE, radial_wavefunction

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """'0,5,7' or '0-7' or a mix such as '0-2,5'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            out.append(int(part))
    if any(v < 0 for v in out):
        raise argparse.ArgumentTypeError("quantum numbers must be non-negative")
    return out


def _int_list(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _molecule(args) -> MoleculeParams:
    if args.params:
        return load_molecule(args.params)
    name = args.molecule_opt or args.molecule
    if not name:
        raise UsageError("a molecule is required (positional or --molecule)")
    try:
        return builtin_molecule(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _add_molecule_args(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("molecule", nargs="?", help="built-in molecule name (H2, CO, HCl, LiH)")
    p.add_argument("-m", "--molecule", dest="molecule_opt", help="built-in molecule name")
    p.add_argument("--params", help="molecule parameter file overriding the built-in data")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotmorse", description="Rotating Morse bound states (Pekeris approximation).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form energies on an (n, l) grid")
    _add_molecule_args(p)
    p.add_argument("--n", type=_int_list, default=[0], help="vibrational numbers, e.g. 0,5,7 or 0-7")
    p.add_argument("--l", type=_int_list, required=True, help="rotational numbers, e.g. 0,5,10")
    p.add_argument("--format", choices=("table", "csv"), default="table")

    p = sub.add_parser("wavefunction", help="write R_{n,l}(r) samples as CSV")
    _add_molecule_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r-min", type=float, help=f"angstrom (default {DEFAULT_R_RANGE[0]} r0)")
    p.add_argument("--r-max", type=float, help=f"angstrom (default {DEFAULT_R_RANGE[1]} r0)")
    p.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p.add_argument("-o", "--out", help="output CSV path (default stdout)")

    p = sub.add_parser("compare", help="compare against a printed table")
    p.add_argument("table", type=int, help="table number 1-4")

    p = sub.add_parser("verify", help="run numerical verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + verify.SUITES)
    _add_molecule_args(p, positional=False)
    return parser


def cmd_spectrum(args, out) -> int:
    if not args.l:
        raise UsageError("--l must list at least one value")
    if not args.n:
        raise UsageError("--n must list at least one value")
    params = _molecule(args)
    rows = []
    for n in args.n:
        for l in args.l:
            try:
                rows.append((n, l, spectrum.energy(params, n, l)))
            except (spectrum.UnboundStateError, spectrum.NoBoundSpectrumError):
                rows.append((n, l, None))
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["molecule", "n", "l", "energy_eV"])
        for n, l, e in rows:
            writer.writerow([params.name, n, l, "unbound" if e is None else repr(e)])
    else:
        out.write(f"Energy eigenvalues (eV) for {params.name}\n")
        out.write(f"{'n':>3} {'l':>3} {'E_nl':>12}\n")
        last_n = None
        for n, l, e in rows:
            n_col = "" if n == last_n else str(n)
            last_n = n
            value = "unbound" if e is None else f"{e:.5f}"
            out.write(f"{n_col:>3} {l:>3} {value:>12}\n")
    return EXIT_OK


def cmd_wavefunction(args, out) -> int:
    params = _molecule(args)
    r_min = args.r_min if args.r_min is not None else DEFAULT_R_RANGE[0] * params.r0
    r_max = args.r_max if args.r_max is not None else DEFAULT_R_RANGE[1] * params.r0
    if not 0 < r_min < r_max or args.points < 2:
        raise UsageError("need 0 < r-min < r-max and at least 2 points")
    try:
        samples = radial_wavefunction(params, args.n, args.l, np.linspace(r_min, r_max, args.points))
    except (spectrum.UnboundStateError, spectrum.NoBoundSpectrumError) as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        samples.write_csv(args.out)
        print(f"wrote {len(samples.grid)} rows to {args.out} (norm {samples.norm_estimate:.12f})", file=sys.stderr)
    else:
        out.write(samples.to_csv())
    return EXIT_OK


def cmd_compare(args, out) -> int:
    if args.table not in TABLE_MOLECULES:
        raise UsageError(f"table must be one of {sorted(TABLE_MOLECULES)}, got {args.table}")
    molecule, rows, tol = verify.compare_table(args.table)
    out.write(f"Table {args.table}: {molecule}, computed vs ICR (present work)\n")
    out.write(f"{'n':>3} {'l':>3} {'computed':>12} {'reference':>12} {'|diff|':>10}\n")
    for n, l, e, ref, diff in rows:
        out.write(f"{n:>3} {l:>3} {e:>12.5f} {ref:>12.5f} {diff:>10.2e}\n")
    worst = max(r[4] for r in rows)
    passed = worst <= tol
    out.write(f"max_abs_diff = {worst:.3e} eV, tolerance = {tol:.0e} eV: {'PASS' if passed else 'FAIL'}\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args, out) -> int:
    molecules = [_molecule(args)] if (args.params or args.molecule_opt) else None
    checks = verify.run(args.suite, molecules)
    for check in checks:
        out.write(check.line() + "\n")
    failed = [c for c in checks if c.gating and not c.passed]
    gating = sum(c.gating for c in checks)
    out.write(f"{gating - len(failed)}/{gating} checks passed\n")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "compare": cmd_compare,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"rotmorse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterFileError, ValidationError, OSError) as exc:
        print(f"rotmorse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
