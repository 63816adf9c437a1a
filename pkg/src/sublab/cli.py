"""Command line front end: ``sublab <command> ...``.

Exit status is 0 on success, 1 when an analysis is refused (non-primitive
input, unknown aperiodicity, resource cap) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import config
from .constructions import robinson_projection, sparse_blowup
from .errors import AnalysisRefused, BoundViolation, ResourceLimit, SublabError
from .fileformat import (
    ParseError,
    bounds_csv,
    fmt_rational,
    parse_dominoes,
    parse_substitution,
    render_pgm,
    serialize_substitution,
    table_csv,
)
from .language import complexity_table, language
from .patterns import Pattern
from .recognizability import solomyak_radius, verify_bounds
from .substitution import apply, determining_positions, is_invertible, is_primitive, power
from .wang1d import tiles_line

ZOO = {
    "robinson-projection": "two-letter 2x2 projection of the Robinson tile substitution",
    "sparse:<m>x<n>": "binary m x n blow-up keeping the letter at (0,0)",
}


class UsageError(Exception):
    pass


def load_substitution(ref: str):
    if ref.startswith("zoo:"):
        name = ref[4:]
        if name == "robinson-projection":
            return robinson_projection()
        if name.startswith("sparse:"):
            try:
                m, n = (int(v) for v in name[7:].lower().split("x"))
            except ValueError:
                raise UsageError(f"bad sparse size in {ref!r}, expected zoo:sparse:<m>x<n>") from None
            if m < 1 or n < 1:
                raise UsageError("sparse blow-up size must be positive")
            return sparse_blowup(m, n)
        raise UsageError(f"unknown zoo entry {name!r}")
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {ref}: {exc.strerror}") from None
    try:
        return parse_substitution(text)
    except ParseError as exc:
        exc.source = ref
        raise


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_info(args) -> int:
    s = load_substitution(args.substitution)
    rep = is_primitive(s)
    dps = sorted(determining_positions(s))
    print(f"alphabet: {' '.join(s.alphabet.names)}")
    print(f"size: {s.width}x{s.height}")
    print(f"primitive: {'yes (exponent ' + str(rep.exponent) + ')' if rep.primitive else 'no'}")
    print(f"invertible: {'yes' if is_invertible(s) else 'no'}")
    print("determining positions: " + (" ".join(f"({d.pos.x},{d.pos.y})" for d in dps) or "none"))
    return 0


def cmd_iterate(args) -> int:
    s = load_substitution(args.substitution)
    try:
        letter = s.alphabet.index(args.letter)
    except KeyError:
        raise UsageError(f"unknown letter {args.letter!r}") from None
    if args.depth < 0:
        raise UsageError("depth must be non-negative")
    p = apply(power(s, args.depth), Pattern(s.alphabet, [[letter]]))
    if args.pgm:
        Path(args.pgm).write_text(render_pgm(p), encoding="ascii", newline="\n")
    if args.text or not args.pgm:
        print(p.to_text())
    return 0


def cmd_language(args) -> int:
    s = load_substitution(args.substitution)
    lang = language(s, args.m, args.n)
    chunks = [f"# {len(lang)} patterns of size {args.m}x{args.n}\n"]
    for p in lang:
        chunks.append(p.to_text() + "\n\n")
    _emit("".join(chunks), args.out)
    return 0


def cmd_table(args) -> int:
    s = load_substitution(args.substitution)
    _emit(table_csv(complexity_table(s, args.max)), args.csv)
    return 0


def _k_text(rho: int, K: Fraction) -> str:
    return f"K=1+1/({rho}+1)^2={fmt_rational(K)}"


def cmd_certify(args) -> int:
    s = load_substitution(args.substitution)
    cert = solomyak_radius(s, args.rho_max)
    if cert is None:
        print(f"unknown: no certifying radius up to {args.rho_max} (not a periodicity verdict)")
        return 1
    print(f"rho={cert.rho} {_k_text(cert.rho, cert.K)}")
    print(f"K~{float(cert.K):.6g}")
    return 0


def cmd_bounds(args) -> int:
    s = load_substitution(args.substitution)
    report = verify_bounds(s, args.n_max, args.rho_max, strict=False)
    text = bounds_csv(report)
    if args.csv:
        _emit(text, args.csv)
        cert = report.certificate
        print(f"rho={cert.rho} {_k_text(cert.rho, cert.K)}")
        print(f"n=1..{args.n_max}: floors {'hold' if report.ok else 'FAIL'}; max ratio {float(report.max_ratio):.4f}")
    else:
        _emit(text, None)
    report.check()
    return 0


def cmd_zoo(args) -> int:
    if not args.name:
        for name, desc in ZOO.items():
            print(f"zoo:{name}\t{desc}")
        return 0
    ref = args.name if args.name.startswith("zoo:") else "zoo:" + args.name
    _emit(serialize_substitution(load_substitution(ref)), args.out)
    return 0


def cmd_domino1d(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        dom = parse_dominoes(text)
    except ParseError as exc:
        exc.source = args.file
        raise
    w = tiles_line(dom)
    if w is None:
        print("tiles: no")
    else:
        print(f"tiles: yes period={w.period}")
        print("cycle: " + " ".join(f"{l}|{r}" for l, r in w.dominoes))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error: usage: {message}\n")
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sublab", description="Two-dimensional substitutive subshift toolkit")
    ap.add_argument("--workers", type=int, default=None, help="worker threads (default: SUBLAB_THREADS or 1)")
    ap.add_argument("--cell-cap", type=int, default=None, help="resource guard (default: SUBLAB_CELL_CAP or 2^24)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="primitivity, invertibility, determining positions")
    p.add_argument("substitution")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("iterate", help="expand a letter")
    p.add_argument("substitution")
    p.add_argument("--letter", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--text", action="store_true", help="print the grid, top row first")
    p.add_argument("--pgm", help="write a plain PGM rendering")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("language", help="list the m x n patterns")
    p.add_argument("substitution")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_language)

    p = sub.add_parser("table", help="square complexity table as CSV")
    p.add_argument("substitution")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("certify", help="search a Solomyak radius")
    p.add_argument("substitution")
    p.add_argument("--rho-max", type=int, default=8)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bounds", help="verify the complexity floors")
    p.add_argument("substitution")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--rho-max", type=int, default=8)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("zoo", help="list or write built-in substitutions")
    p.add_argument("name", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("domino1d", help="decide whether a domino set tiles the line")
    p.add_argument("file")
    p.set_defaults(func=cmd_domino1d)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    changes = {}
    if args.workers is not None:
        changes["workers"] = args.workers
    if args.cell_cap is not None:
        changes["cell_cap"] = args.cell_cap
    try:
        with config.override(**changes):
            return args.func(args)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            sys.stderr.write(f"error: {exc.diagnostic(getattr(exc, 'source', None))}\n")
        else:
            sys.stderr.write(f"error: {exc}\n")
        return 2
    except UsageError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return 2
    except (AnalysisRefused, ResourceLimit, BoundViolation) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except SublabError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
