import numpy as np
import pytest

from sublab import (
    Alphabet,
    Pattern,
    Substitution,
    apply,
    complexity,
    complexity_table,
    config,
    fragment_complexity,
    is_primitive,
    language,
    naive_language,
    saturate_seeds,
    solomyak_radius,
    subpatterns,
)
from sublab.errors import NotPrimitive, SizeTooSmall
from sublab.language import naive_language_stable

# Frozen from naive_language(sigma', 2, 2, 6): cells holding a 1.
SIGMA_L22 = [
    {(0, 0)},
    {(1, 0)},
    {(0, 1)},
    {(1, 1)},
    {(0, 0), (1, 1)},
    {(1, 0), (0, 1)},
]

# Frozen from naive_language_stable for n = 1..8.
SIGMA_TABLE = [2, 6, 14, 24, 40, 56, 74, 96]

ONE = Alphabet(("a",))
CONST = Substitution(ONE, np.zeros((1, 2, 2)))


def random_primitive(rng, k=2, size=(2, 2)):
    while True:
        s = Substitution(Alphabet.of_size(k), rng.integers(0, k, size=(k, size[1], size[0])))
        if is_primitive(s):
            return s


def test_naive_oracle_for_sigma(sigma):
    naive = naive_language(sigma, 2, 2, 6)
    ones = [{v for v, a in p.cells.items() if a == 1} for p in naive]
    assert sorted(map(sorted, ones)) == sorted(map(sorted, SIGMA_L22))
    assert language(sigma, 2, 2) == naive


def test_seeds(sigma):
    seeds = saturate_seeds(sigma)
    assert len(seeds.seeds) == 6
    assert {p for p in seeds.seeds} == language(sigma, 2, 2).patterns
    # One more round adds nothing.
    more = set()
    for t in seeds.seeds:
        more |= subpatterns(apply(sigma, t), 2, 2)
    assert more <= seeds.seeds
    assert list(seeds.history) == sorted(seeds.history)
    assert seeds.converged_at <= len(sigma.alphabet) ** 4


def test_constant_substitution():
    assert len(saturate_seeds(CONST).seeds) == 1
    assert complexity(CONST, 3, 2) == 1
    assert complexity_table(CONST, 3) == [(1, 1), (2, 1), (3, 1)]


def test_sigma_language_values(sigma):
    assert language(sigma, 1, 1).patterns == {Pattern(sigma.alphabet, [[0]]), Pattern(sigma.alphabet, [[1]])}
    assert complexity(sigma, 2, 2) == 6
    table = complexity_table(sigma, 8)
    assert table[:2] == [(1, 2), (2, 6)]
    assert [c for _, c in table] == SIGMA_TABLE
    counts = [c for _, c in complexity_table(sigma, 16)]
    assert all(a < b for a, b in zip(counts, counts[1:]))


def test_table_matches_naive_values(sigma):
    for n, expected in enumerate(SIGMA_TABLE, start=1):
        assert len(naive_language_stable(sigma, n, n)[0]) == expected


def test_refusals(sigma):
    with pytest.raises(NotPrimitive):
        language(Substitution(sigma.alphabet, [np.zeros((2, 2)), np.ones((2, 2))]), 1, 1)
    thin = Substitution(sigma.alphabet, [[[0, 1]], [[1, 0]]])
    with pytest.raises(SizeTooSmall):
        saturate_seeds(thin)


def test_naive_monotone_and_letters(sigma):
    assert naive_language(sigma, 2, 2, 1).issubset(naive_language(sigma, 2, 2, 2))
    rng = np.random.default_rng(7)
    for _ in range(10):
        s = random_primitive(rng, k=3)
        assert len(naive_language(s, 1, 1, 5)) == 3


def test_fragment_complexity(sigma, sigma2_0):
    assert fragment_complexity(sigma2_0, 1, 1) == 2
    mono = Pattern(sigma.alphabet, np.ones((5, 7), dtype=int))
    assert fragment_complexity(mono, 2, 3) == 1


def test_rectangular_windows(sigma):
    for m, n in [(1, 3), (3, 1), (2, 5), (5, 3)]:
        assert language(sigma, m, n) == naive_language_stable(sigma, m, n)[0]


def test_rectangular_substitution_language():
    rng = np.random.default_rng(3)
    s = random_primitive(rng, k=2, size=(2, 3))
    for m, n in [(2, 2), (3, 2), (2, 4)]:
        assert language(s, m, n) == naive_language_stable(s, m, n)[0]


def test_oracle_equivalence_random():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        s = random_primitive(rng)
        for m in range(1, 5):
            for n in range(1, 5):
                naive, _ = naive_language_stable(s, m, n)
                assert language(s, m, n) == naive, (s.table.tolist(), m, n)


def test_image_of_language_pattern_stays_in_language(sigma):
    for m in range(1, 4):
        for n in range(1, 4):
            for p in language(sigma, m, n):
                img = apply(sigma, p)
                for mm in range(1, 4):
                    for nn in range(1, 4):
                        assert subpatterns(img, mm, nn) <= language(sigma, mm, nn).patterns


def test_mn_plus_one_floor_on_certified_random():
    rng = np.random.default_rng(11)
    certified = 0
    for _ in range(25):
        s = random_primitive(rng)
        if solomyak_radius(s, 4) is None:
            continue
        certified += 1
        for m in range(1, 5):
            for n in range(1, 5):
                assert complexity(s, m, n) >= m * n + 1
    assert certified > 0


def test_language_independent_of_workers(sigma):
    from sublab.language import _language_blocks

    with config.override(workers=1):
        a = _language_blocks(sigma, 9, 7)
    with config.override(workers=4):
        b = _language_blocks(sigma, 9, 7)
    assert a.tobytes() == b.tobytes()


def test_language_is_sorted_canonically(sigma):
    pats = language(sigma, 3, 3).sorted()
    assert pats == sorted(pats)


def test_small_cell_cap_still_exact(sigma):
    from sublab.language import _language_blocks

    with config.override(cell_cap=5000):
        capped = _language_blocks(sigma, 6, 6)
    assert capped.tobytes() == language(sigma, 6, 6).blocks.tobytes()
