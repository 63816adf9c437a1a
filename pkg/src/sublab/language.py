"""Exact rectangular languages of substitutive subshifts.

The exact enumerator saturates the set of legal 2x2 letter blocks and then
blows those seeds up by a power of the substitution large enough that every
``m x n`` window meets at most a 2x2 block of supertiles.  ``naive_language``
is the independent brute-force route used to cross-check it.
"""

from __future__ import annotations

import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import config
from .errors import NotPrimitive, SizeTooSmall
from .patterns import Alphabet, Pattern, block_keys, patterns_from_blocks, unique_blocks, window_blocks
from .substitution import Substitution, apply, blow_up, is_primitive, power


@dataclass(frozen=True, eq=False)
class SeedSet:
    seeds: frozenset
    substitution: Substitution
    converged_at: int
    history: tuple[int, ...] = field(repr=False)
    blocks: np.ndarray = field(repr=False)


@dataclass(frozen=True, eq=False)
class PatternLanguage:
    """A set of canonical ``m x n`` patterns, stored as sorted ``(K, n, m)`` blocks."""

    m: int
    n: int
    alphabet: Alphabet
    blocks: np.ndarray = field(repr=False)
    exact: bool = True

    def __len__(self):
        return self.blocks.shape[0]

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[Pattern]:
        return patterns_from_blocks(self.alphabet, self.blocks)

    @functools.cached_property
    def patterns(self) -> frozenset:
        return frozenset(self.sorted())

    @functools.cached_property
    def keys(self) -> frozenset:
        return frozenset(block_keys(self.blocks))

    def __contains__(self, p: Pattern) -> bool:
        if p.alphabet != self.alphabet or not p.is_rectangle or p.size != (self.m, self.n):
            return False
        return np.ascontiguousarray(p.grid).tobytes() in self.keys

    def __eq__(self, other):
        if not isinstance(other, PatternLanguage):
            return NotImplemented
        return (self.m, self.n, self.alphabet) == (other.m, other.n, other.alphabet) and np.array_equal(
            self.blocks, other.blocks
        )

    __hash__ = None

    def issubset(self, other: "PatternLanguage") -> bool:
        return self.keys <= other.keys


def require_enumerable(s: Substitution) -> None:
    if s.width < 2 or s.height < 2:
        raise SizeTooSmall(f"language enumeration needs images of at least 2x2, got {s.width}x{s.height}")
    if not is_primitive(s):
        raise NotPrimitive("language enumeration requires a primitive substitution")


def _windows_of_many(blocks: np.ndarray, m: int, n: int) -> np.ndarray:
    k, h, w = blocks.shape
    if k == 0 or m > w or n > h:
        return np.zeros((0, n, m), dtype=blocks.dtype)
    config.check_cells(k * (h - n + 1) * (w - m + 1) * m * n, "window extraction")
    win = sliding_window_view(blocks, (n, m), axis=(1, 2))
    return np.ascontiguousarray(win.reshape(-1, n, m))


def _merge(acc: np.ndarray, new: np.ndarray) -> np.ndarray:
    if acc.shape[0] == 0:
        return new
    return unique_blocks(np.concatenate([acc, new]))


@functools.lru_cache(maxsize=64)
def _saturate(s: Substitution):
    table = s.table
    start = unique_blocks(np.concatenate([window_blocks(table[a], 2, 2) for a in range(len(s.alphabet))]))
    known = set(block_keys(start))
    acc = start
    frontier = start
    history = [len(known)]
    rounds = 0
    while frontier.shape[0]:
        rounds += 1
        cand = unique_blocks(_windows_of_many(blow_up(table, frontier), 2, 2))
        fresh = [i for i, key in enumerate(block_keys(cand)) if key not in known]
        frontier = cand[fresh]
        known.update(block_keys(frontier))
        acc = _merge(acc, frontier)
        history.append(len(known))
    acc.setflags(write=False)
    return acc, rounds, tuple(history)


def saturate_seeds(s: Substitution) -> SeedSet:
    require_enumerable(s)
    blocks, rounds, history = _saturate(s)
    seeds = frozenset(patterns_from_blocks(s.alphabet, blocks))
    return SeedSet(seeds, s, rounds, history, blocks)


def levels_needed(s: Substitution, m: int, n: int) -> int:
    """Least ``k`` with ``M^k >= m`` and ``N^k >= n``."""
    k = 0
    while s.width**k < m or s.height**k < n:
        k += 1
    return k


def _seed_windows(table_k: np.ndarray, seed: np.ndarray, m: int, n: int) -> np.ndarray:
    """Distinct ``m x n`` windows of a blown-up seed starting in its lower-left supertile."""
    sy, sx = table_k.shape[1:]
    big = blow_up(table_k, seed)
    # Chunk the start rows so no intermediate array exceeds the cell cap.
    per_row = sx * m * n
    config.check_cells(per_row, "window extraction")
    rows_per_chunk = max(1, config.current().cell_cap // per_row)
    acc = np.zeros((0, n, m), dtype=seed.dtype)
    for y0 in range(0, sy, rows_per_chunk):
        y1 = min(sy, y0 + rows_per_chunk)
        region = big[y0:y1 + n - 1, : sx + m - 1]
        win = sliding_window_view(region, (n, m)).reshape(-1, n, m)
        acc = _merge(acc, unique_blocks(np.ascontiguousarray(win)))
    return acc


def _language_blocks(s: Substitution, m: int, n: int) -> np.ndarray:
    seeds, _, _ = _saturate(s)
    table_k = power(s, levels_needed(s, m, n)).table
    workers = config.current().workers
    if workers > 1 and seeds.shape[0] > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda seed: _seed_windows(table_k, seed, m, n), seeds))
    else:
        parts = [_seed_windows(table_k, seed, m, n) for seed in seeds]
    acc = np.zeros((0, n, m), dtype=seeds.dtype)
    for part in parts:
        acc = _merge(acc, part)
        config.check_patterns(acc.shape[0], "language")
    acc.setflags(write=False)
    return acc


def language(s: Substitution, m: int, n: int) -> PatternLanguage:
    """The exact set of ``m x n`` patterns of the substitutive subshift."""
    if m < 1 or n < 1:
        raise ValueError("window size must be positive")
    require_enumerable(s)
    return PatternLanguage(m, n, s.alphabet, _cached_language(s, m, n), exact=True)


@functools.lru_cache(maxsize=512)
def _cached_language(s: Substitution, m: int, n: int) -> np.ndarray:
    return _language_blocks(s, m, n)


def complexity(s: Substitution, m: int, n: int) -> int:
    return len(language(s, m, n))


def complexity_table(s: Substitution, n_max: int) -> list[tuple[int, int]]:
    require_enumerable(s)
    return [(n, complexity(s, n, n)) for n in range(1, n_max + 1)]


def _naive_levels(s: Substitution, m: int, n: int, depth: int):
    """Yield the cumulative naive window set after each depth ``1..depth``."""
    images = [Pattern(s.alphabet, [[a]]) for a in range(len(s.alphabet))]
    acc = np.zeros((0, n, m), dtype=s.alphabet.dtype)
    for _ in range(depth):
        images = [apply(s, p) for p in images]
        for p in images:
            acc = _merge(acc, unique_blocks(window_blocks(p.grid, m, n)))
        yield acc


def naive_language(s: Substitution, m: int, n: int, depth: int) -> PatternLanguage:
    """Union of the ``m x n`` windows of ``s^k(a)`` over all letters and ``1 <= k <= depth``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    for acc in _naive_levels(s, m, n, depth):
        pass
    return PatternLanguage(m, n, s.alphabet, acc, exact=False)


def naive_language_stable(s: Substitution, m: int, n: int, max_depth: int = 12) -> tuple[PatternLanguage, int]:
    """Grow the naive depth until two consecutive depths add nothing and the images cover the window."""
    prev = -1
    quiet = 0
    for depth, acc in enumerate(_naive_levels(s, m, n, max_depth), start=1):
        quiet = quiet + 1 if acc.shape[0] == prev else 0
        prev = acc.shape[0]
        if quiet >= 2 and s.width**depth >= m and s.height**depth >= n:
            break
    return PatternLanguage(m, n, s.alphabet, acc, exact=False), depth


def fragment_complexity(p: Pattern, m: int, n: int) -> int:
    if not p.is_rectangle:
        raise ValueError("fragment must be a full rectangle")
    if p.is_empty:
        return 0
    return unique_blocks(window_blocks(p.grid, m, n)).shape[0]
