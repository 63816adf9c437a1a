from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from sublab import Alphabet, Pattern, Substitution, robinson_projection, sparse_blowup
from sublab.fileformat import (
    ParseError,
    fmt_rational,
    parse_dominoes,
    parse_substitution,
    render_pgm,
    serialize_substitution,
    table_csv,
)

from conftest import substitutions

SIGMA_FILE = """\
# projection of the Robinson substitution
alphabet 0 1
size 2 2
rule 0
0 0
1 0
rule 1
0 1
1 0
"""


def parse_error(text):
    with pytest.raises(ParseError) as info:
        parse_substitution(text)
    return info.value


def test_sigma_file_parses():
    assert parse_substitution(SIGMA_FILE) == robinson_projection()


def test_canonical_text_round_trip():
    canonical = "\n".join(l for l in SIGMA_FILE.splitlines() if not l.startswith("#")) + "\n"
    assert serialize_substitution(parse_substitution(canonical)) == canonical


@settings(max_examples=100, deadline=None)
@given(substitutions(max_letters=5))
def test_value_round_trip(s):
    assert parse_substitution(serialize_substitution(s)) == s


def test_multichar_tokens():
    s = parse_substitution("alphabet red blue\nsize 1 2\nrule red\nblue\nred\nrule blue\nred\nred\n")
    assert s.alphabet.names == ("red", "blue")
    assert s.image(0).cells == {(0, 0): 0, (0, 1): 1}


def test_missing_rule():
    e = parse_error("alphabet a b\nsize 1 1\nrule a\na\n")
    assert e.kind == "MissingRule" and "'b'" in e.message


def test_wrong_row_width():
    e = parse_error("alphabet a b\nsize 2 1\nrule a\na\nrule b\nb b\n")
    assert e.kind == "WrongRowWidth" and (e.line, e.col) == (4, 1)
    assert e.diagnostic("f.sub") == "f.sub:4:1: WrongRowWidth: row has 1 letters, expected 2"


def test_wrong_row_count():
    e = parse_error("alphabet a\nsize 1 2\nrule a\na\n")
    assert e.kind == "WrongRowCount"
    e = parse_error("alphabet a\nsize 1 1\nrule a\na\na\n")
    assert e.kind == "WrongRowCount" and e.line == 5


def test_unknown_letter_and_duplicate():
    e = parse_error("alphabet a\nsize 2 1\nrule a\na  z\n")
    assert (e.kind, e.line, e.col) == ("UnknownLetter", 4, 4)
    e = parse_error("alphabet a\nsize 1 1\nrule a\na\nrule a\na\n")
    assert (e.kind, e.line, e.col) == ("DuplicateRule", 5, 6)


def test_syntax_errors():
    assert parse_error("size 1 1\n").kind == "SyntaxError"
    assert parse_error("alphabet a\nsize x 1\n").kind == "SyntaxError"
    assert parse_error("alphabet a a\nsize 1 1\n").kind == "SyntaxError"
    assert parse_error("alphabet rule\nsize 1 1\n").kind == "SyntaxError"
    assert parse_error("").kind == "SyntaxError"


def test_dominoes():
    d = parse_dominoes("colors r b  # two colours\ndomino r b\n\ndomino b r\n")
    assert d.colors == ("r", "b") and d.dominoes == (("r", "b"), ("b", "r"))
    with pytest.raises(ParseError) as info:
        parse_dominoes("colors r b\ndomino r g\n")
    assert (info.value.kind, info.value.line, info.value.col) == ("UnknownLetter", 2, 10)
    with pytest.raises(ParseError):
        parse_dominoes("domino r b\n")


def test_pgm_bit_exact(sigma):
    from sublab import apply, power

    p = apply(power(sigma, 2), Pattern(sigma.alphabet, [[0]]))
    assert render_pgm(p) == "P2\n4 4\n255\n0 0 0 0\n255 0 255 0\n0 255 0 0\n255 0 255 0\n"
    three = Pattern(Alphabet.of_size(3), [[0, 1, 2]])
    assert render_pgm(three) == "P2\n3 1\n255\n0 127 255\n"
    one = Pattern(Alphabet(("a",)), [[0, 0]])
    assert render_pgm(one).endswith("0 0\n")


def test_small_outputs():
    assert fmt_rational(Fraction(17, 16)) == "17/16" and fmt_rational(Fraction(4)) == "4"
    assert table_csv([(1, 2), (2, 6)]) == "n,count\n1,2\n2,6\n"
    assert serialize_substitution(sparse_blowup(2, 1)) == "alphabet 0 1\nsize 2 1\nrule 0\n0 0\nrule 1\n1 0\n"
