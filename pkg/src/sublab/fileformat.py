"""Text formats: substitution files, domino files, PGM renderings, CSV tables.

Substitution files are line oriented; ``#`` starts a comment::

    alphabet 0 1
    size 2 2
    rule 0
    0 0
    1 0
    rule 1
    0 1
    1 0

Rule rows are listed top row first.  Domino files declare ``colors`` and then
one ``domino <left> <right>`` per line.
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .patterns import Alphabet, Pattern
from .substitution import Substitution
from .wang1d import DominoSet

_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    def __init__(self, kind: str, message: str, line: int | None = None, col: int | None = None):
        self.kind, self.message, self.line, self.col = kind, message, line, col
        super().__init__(self.diagnostic())

    def location(self) -> str:
        if self.line is None:
            return ""
        return f"{self.line}:{self.col}" if self.col is not None else f"{self.line}"

    def diagnostic(self, source: str | None = None) -> str:
        where = ":".join(x for x in (source, self.location()) if x)
        return f"{where + ': ' if where else ''}{self.kind}: {self.message}"


def _lines(text: str):
    """Yield ``(line_number, [(token, column), ...])`` for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if toks:
            yield no, toks


def parse_substitution(text: str) -> Substitution:
    lines = list(_lines(text))
    pos = 0

    def expect(keyword: str, arity: int | None = None):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError("SyntaxError", f"expected '{keyword}' line, found end of file")
        no, toks = lines[pos]
        if toks[0][0] != keyword:
            raise ParseError("SyntaxError", f"expected '{keyword}', found {toks[0][0]!r}", no, toks[0][1])
        if arity is not None and len(toks) - 1 != arity:
            raise ParseError("SyntaxError", f"'{keyword}' takes {arity} arguments", no, toks[0][1])
        pos += 1
        return no, toks[1:]

    no, names = expect("alphabet")
    if not names:
        raise ParseError("SyntaxError", "empty alphabet", no, 1)
    seen = {}
    for tok, col in names:
        if tok in seen:
            raise ParseError("SyntaxError", f"letter {tok!r} declared twice", no, col)
        if tok == "rule":
            raise ParseError("SyntaxError", "'rule' is reserved and cannot name a letter", no, col)
        seen[tok] = len(seen)
    alphabet = Alphabet(tuple(seen))

    no, dims = expect("size", 2)
    try:
        M, N = int(dims[0][0]), int(dims[1][0])
    except ValueError:
        raise ParseError("SyntaxError", "size must be two integers", no, dims[0][1]) from None
    if M < 1 or N < 1:
        raise ParseError("SyntaxError", "size must be positive", no, dims[0][1])

    table = np.zeros((len(alphabet), N, M), dtype=np.int64)
    done = set()
    while pos < len(lines):
        no, toks = lines[pos]
        if toks[0][0] != "rule":
            raise ParseError("WrongRowCount", f"row outside a rule (rules have {N} rows)", no, toks[0][1])
        if len(toks) != 2:
            raise ParseError("SyntaxError", "'rule' takes exactly one letter", no, toks[0][1])
        tok, col = toks[1]
        if tok not in seen:
            raise ParseError("UnknownLetter", f"unknown letter {tok!r}", no, col)
        if tok in done:
            raise ParseError("DuplicateRule", f"second rule for letter {tok!r}", no, col)
        done.add(tok)
        pos += 1
        rows = []
        while len(rows) < N:
            if pos >= len(lines) or lines[pos][1][0][0] == "rule":
                where = (lines[pos][0], 1) if pos < len(lines) else (no, col)
                raise ParseError("WrongRowCount", f"rule {tok!r} has {len(rows)} rows, expected {N}", *where)
            rno, rtoks = lines[pos]
            if len(rtoks) != M:
                raise ParseError("WrongRowWidth", f"row has {len(rtoks)} letters, expected {M}", rno, rtoks[0][1])
            for t, c in rtoks:
                if t not in seen:
                    raise ParseError("UnknownLetter", f"unknown letter {t!r}", rno, c)
            rows.append([seen[t] for t, _ in rtoks])
            pos += 1
        table[seen[tok]] = np.array(rows[::-1])
    for tok in alphabet.names:
        if tok not in done:
            raise ParseError("MissingRule", f"no rule for letter {tok!r}")
    return Substitution(alphabet, table)


def serialize_substitution(s: Substitution) -> str:
    out = [f"alphabet {' '.join(s.alphabet.names)}", f"size {s.width} {s.height}"]
    for a, name in enumerate(s.alphabet.names):
        out.append(f"rule {name}")
        out.extend(" ".join(r) for r in s.image(a).rows())
    return "\n".join(out) + "\n"


def parse_dominoes(text: str) -> DominoSet:
    colors = None
    dominoes = []
    for no, toks in _lines(text):
        head, col = toks[0]
        if head == "colors":
            if colors is not None:
                raise ParseError("SyntaxError", "'colors' declared twice", no, col)
            if dominoes:
                raise ParseError("SyntaxError", "'colors' must come before dominoes", no, col)
            colors = [t for t, _ in toks[1:]]
            if len(set(colors)) != len(colors):
                raise ParseError("SyntaxError", "duplicate colour", no, col)
        elif head == "domino":
            if colors is None:
                raise ParseError("SyntaxError", "'domino' before 'colors'", no, col)
            if len(toks) != 3:
                raise ParseError("SyntaxError", "'domino' takes two colours", no, col)
            for t, c in toks[1:]:
                if t not in colors:
                    raise ParseError("UnknownLetter", f"unknown colour {t!r}", no, c)
            dominoes.append((toks[1][0], toks[2][0]))
        else:
            raise ParseError("SyntaxError", f"unexpected {head!r}", no, col)
    if colors is None:
        raise ParseError("SyntaxError", "missing 'colors' line")
    return DominoSet(colors, dominoes)


def render_pgm(p: Pattern) -> str:
    """Plain PGM, one grey level per letter, top row first."""
    k = len(p.alphabet)
    levels = np.zeros(k, dtype=np.int64) if k == 1 else (255 * np.arange(k)) // (k - 1)
    grey = levels[p.grid.astype(np.int64)][::-1]
    body = "\n".join(" ".join(str(v) for v in row) for row in grey.tolist())
    return f"P2\n{p.width} {p.height}\n255\n{body}\n"


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def table_csv(rows) -> str:
    return "n,count\n" + "".join(f"{n},{c}\n" for n, c in rows)


def bounds_csv(report) -> str:
    out = ["n,complexity,km_floor,turbo_floor,k_of_n,Kn2_floor,ratio"]
    for r in report.rows:
        out.append(
            ",".join(
                [
                    str(r.n),
                    str(r.complexity),
                    str(r.km_floor),
                    fmt_rational(r.turbo_floor),
                    str(r.k_of_n),
                    fmt_rational(r.kn2_floor),
                    fmt_rational(r.ratio),
                ]
            )
        )
    return "\n".join(out) + "\n"
