import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sublab import Alphabet, Pattern, Vec2, canonicalize, occurrences, restrict, subpatterns, translate
from sublab.errors import DomainNotContained, EmptyPattern, ResourceLimit
from sublab import config

from conftest import rect_patterns

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))


def naive_occurrences(p, q):
    """Quadratic scan over every offset that keeps p's bounding box inside q's."""
    if not p.cells:
        return {(0, 0)}
    pc, qc = p.cells, q.cells
    if not qc:
        return set()
    qxs = [v[0] for v in qc]
    qys = [v[1] for v in qc]
    out = set()
    for ux in range(min(qxs) - max(v[0] for v in pc), max(qxs) - min(v[0] for v in pc) + 1):
        for uy in range(min(qys) - max(v[1] for v in pc), max(qys) - min(v[1] for v in pc) + 1):
            if all(qc.get((x + ux, y + uy)) == a for (x, y), a in pc.items()):
                out.add((ux, uy))
    return out


def test_translate_identity_and_inverse():
    p = Pattern.from_rows(AB, ["ab", "ba", "aa"])
    assert translate(p, (0, 0)) == p
    assert translate(translate(p, (1, 2)), (-1, -2)) == p


def test_translate_single_cell():
    p = Pattern.from_cells(AB, {(0, 0): "a"})
    assert translate(p, (3, -1)).cells == {(3, -1): 0}


def test_restrict():
    p = Pattern(ABC, np.arange(16).reshape(4, 4) % 3)
    assert restrict(p, p.domain) == p
    assert restrict(p, set()).is_empty
    block = restrict(p, {(x, y) for x in range(2) for y in range(2)})
    assert block == Pattern(ABC, p.grid[:2, :2])
    with pytest.raises(DomainNotContained):
        restrict(p, {(4, 0)})


def test_restrict_non_rectangular():
    p = Pattern(AB, [[0, 1], [1, 1]])
    r = restrict(p, {(0, 0), (1, 1)})
    assert r.cells == {(0, 0): 0, (1, 1): 1}
    assert not r.is_rectangle


def test_occurrences_examples(sigma2_0):
    p = Pattern.from_rows(AB, ["ab", "ba"])
    assert (0, 0) in occurrences(p, p)
    assert occurrences(Pattern.empty(AB), p) == {(0, 0)}
    one = Pattern(sigma2_0.alphabet, [[1]])
    assert occurrences(one, sigma2_0) == {(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)}


def test_canonicalize():
    assert canonicalize(Pattern.from_cells(AB, {(3, 5): "a"})) == Pattern(AB, [[0]])
    p = Pattern.from_rows(AB, ["ab", "bb"])
    assert canonicalize(p) == p
    with pytest.raises(EmptyPattern):
        canonicalize(Pattern.empty(AB))


def test_subpatterns_examples(sigma2_0):
    p = Pattern.from_rows(ABC, ["abc", "cab"])
    assert subpatterns(p, 3, 2) == {p}
    assert len(subpatterns(sigma2_0, 1, 1)) == 2
    # Sliding a 2x2 window over the 4x4 grid by hand.
    g = sigma2_0.grid
    by_hand = {g[y:y + 2, x:x + 2].tobytes() for y in range(3) for x in range(3)}
    assert len(by_hand) == 5
    assert len(subpatterns(sigma2_0, 2, 2)) == 5


def test_subpatterns_skip_holes():
    p = Pattern.from_cells(AB, {(0, 0): 0, (1, 0): 1, (0, 1): 1})
    assert subpatterns(p, 2, 2) == set()
    assert subpatterns(p, 2, 1) == {Pattern(AB, [[0, 1]])}


def test_from_rows_top_first():
    p = Pattern.from_rows(AB, ["ab", "bb"])
    assert p[(0, 1)] == 0 and p[(0, 0)] == 1
    assert p.rows() == [["a", "b"], ["b", "b"]]


def test_equality_respects_position():
    p = Pattern(AB, [[0, 1]])
    assert translate(p, (1, 0)) != p
    assert canonicalize(translate(p, (1, 0))) == p
    assert hash(Pattern(AB, [[0, 1]])) == hash(p)


def test_resource_limit():
    q = Pattern(AB, np.zeros((64, 64), dtype=int))
    with config.override(cell_cap=100):
        with pytest.raises(ResourceLimit):
            subpatterns(q, 4, 4)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_occurrences_match_naive_scan(data):
    q = data.draw(rect_patterns(AB, max_w=16, max_h=16))
    p = data.draw(rect_patterns(AB, max_w=4, max_h=4))
    if data.draw(st.booleans()):
        cells = sorted(p.domain)
        keep = data.draw(st.lists(st.sampled_from(cells), min_size=1, unique=True))
        p = restrict(p, keep)
    p = translate(p, data.draw(st.tuples(st.integers(-5, 5), st.integers(-5, 5))))
    found = occurrences(p, q)
    assert found == naive_occurrences(p, q)
    for u in found:
        shifted = translate(p, u)
        assert restrict(q, shifted.domain) == shifted


@settings(max_examples=100, deadline=None)
@given(rect_patterns(ABC, 6, 6), st.tuples(st.integers(-100, 100), st.integers(-100, 100)))
def test_canonicalize_translation_invariant(p, u):
    assert canonicalize(translate(p, u)) == canonicalize(p)
    assert canonicalize(canonicalize(p)) == canonicalize(p)


@settings(max_examples=80, deadline=None)
@given(rect_patterns(AB, 8, 8), st.integers(1, 4), st.integers(1, 4))
def test_subpattern_count_bound(q, m, n):
    found = subpatterns(q, m, n)
    assert len(found) <= max(0, q.width - m + 1) * max(0, q.height - n + 1)
    for s in found:
        assert s.is_canonical and s.size == (m, n) and occurrences(s, q)


@st.composite
def small_patterns(draw):
    cells = draw(
        st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(0, 1), min_size=1, max_size=5)
    )
    return canonicalize(Pattern.from_cells(AB, cells))


@settings(max_examples=150, deadline=None)
@given(small_patterns(), small_patterns(), small_patterns())
def test_canonical_order_is_strict_total(p, q, r):
    assert (p < q) + (q < p) + (p == q) == 1
    if p < q and q < r:
        assert p < r
    assert not p < p


def test_canonical_order_on_rectangles_is_row_major_from_bottom():
    lo = Pattern(AB, [[0, 1], [0, 0]])  # bottom row 0 1
    hi = Pattern(AB, [[1, 0], [0, 0]])
    assert lo < hi
    assert Vec2(1, 2) + (1, 1) == (2, 3)
