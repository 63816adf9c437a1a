"""Lattice vectors, alphabets and finite patterns.

Coordinates are ``(x, y)`` with ``x`` growing rightward and ``y`` upward.  A
pattern stores its bounding box as a dense ``grid[y, x]`` array (row 0 is the
bottom row) plus an optional boolean mask for non-rectangular domains, so the
row-major flattening of ``grid`` lists the cells in ``(y, x)``-lexicographic
order.  That is the order used by the canonical pattern ordering.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import config
from .errors import AlphabetMismatch, DomainNotContained, EmptyPattern


class Vec2(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec2(-self.x, -self.y)


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("alphabet must have at least one letter")
        for tok in names:
            if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok) or "#" in tok:
                raise ValueError(f"invalid letter name {tok!r}")
        if len(set(names)) != len(names):
            raise ValueError("letter names must be distinct")

    @classmethod
    def of_size(cls, n: int) -> "Alphabet":
        return cls(tuple(str(i) for i in range(n)))

    def __len__(self):
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._lookup[name]
        except KeyError:
            raise KeyError(f"unknown letter {name!r}") from None

    @functools.cached_property
    def _lookup(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.names)}

    @property
    def dtype(self) -> np.dtype:
        # Big-endian for wide alphabets keeps byte order equal to numeric order.
        return np.dtype(np.uint8) if len(self.names) <= 256 else np.dtype(">u4")


BINARY = Alphabet(("0", "1"))


@functools.total_ordering
class Pattern:
    """An immutable finite coloring of a subset of Z^2."""

    __slots__ = ("alphabet", "_x0", "_y0", "_grid", "_mask", "_hash")

    def __init__(self, alphabet: Alphabet, grid, origin=(0, 0), mask=None):
        g = np.array(grid, dtype=alphabet.dtype, ndmin=2, copy=True)
        if g.ndim != 2:
            raise ValueError("grid must be two-dimensional")
        if g.size and int(g.max()) >= len(alphabet):
            raise ValueError("letter index out of alphabet range")
        x0, y0 = int(origin[0]), int(origin[1])
        m = None
        if mask is not None:
            m = np.array(mask, dtype=bool, ndmin=2)
            if m.shape != g.shape:
                raise ValueError("mask shape must match grid shape")
            if not m.any():
                g, m = g[:0, :0], None
            elif m.all():
                m = None
            else:
                ys = np.flatnonzero(m.any(axis=1))
                xs = np.flatnonzero(m.any(axis=0))
                sl = (slice(ys[0], ys[-1] + 1), slice(xs[0], xs[-1] + 1))
                g, m = g[sl].copy(), m[sl].copy()
                x0, y0 = x0 + int(xs[0]), y0 + int(ys[0])
                g[~m] = 0
                if m.all():
                    m = None
        if g.size == 0:
            g, m, x0, y0 = np.zeros((0, 0), dtype=alphabet.dtype), None, 0, 0
        g.setflags(write=False)
        if m is not None:
            m.setflags(write=False)
        self.alphabet = alphabet
        self._x0, self._y0 = x0, y0
        self._grid, self._mask = g, m
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Pattern":
        return cls(alphabet, np.zeros((0, 0)))

    @classmethod
    def from_cells(cls, alphabet: Alphabet, cells: Mapping) -> "Pattern":
        """Build a pattern from ``{(x, y): letter}``; letters are indices or names."""
        if not cells:
            return cls.empty(alphabet)
        xs = [int(v[0]) for v in cells]
        ys = [int(v[1]) for v in cells]
        x0, y0 = min(xs), min(ys)
        w, h = max(xs) - x0 + 1, max(ys) - y0 + 1
        g = np.zeros((h, w), dtype=np.int64)
        m = np.zeros((h, w), dtype=bool)
        for (x, y), a in cells.items():
            g[y - y0, x - x0] = _letter(alphabet, a)
            m[y - y0, x - x0] = True
        return cls(alphabet, g, (x0, y0), m)

    @classmethod
    def from_rows(cls, alphabet: Alphabet, rows: Sequence[Sequence], origin=(0, 0)) -> "Pattern":
        """Build a rectangle from rows listed top row first."""
        g = [[_letter(alphabet, a) for a in row] for row in reversed(rows)]
        if g and len({len(r) for r in g}) != 1:
            raise ValueError("rows must have equal length")
        return cls(alphabet, np.array(g, dtype=np.int64).reshape(len(g), -1), origin)

    # -- geometry ---------------------------------------------------------

    @property
    def origin(self) -> Vec2:
        return Vec2(self._x0, self._y0)

    @property
    def width(self) -> int:
        return self._grid.shape[1]

    @property
    def height(self) -> int:
        return self._grid.shape[0]

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height

    @property
    def grid(self) -> np.ndarray:
        """Read-only ``grid[y, x]`` over the bounding box; off-domain cells read 0."""
        return self._grid

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.ones(self._grid.shape, dtype=bool)
            m.setflags(write=False)
            return m
        return self._mask

    @property
    def is_empty(self) -> bool:
        return self._grid.size == 0

    @property
    def is_rectangle(self) -> bool:
        return self._mask is None

    @property
    def is_canonical(self) -> bool:
        return self._x0 == 0 and self._y0 == 0

    def __len__(self):
        return int(self.mask.sum())

    @property
    def domain(self) -> frozenset:
        ys, xs = np.nonzero(self.mask)
        return frozenset(Vec2(int(x) + self._x0, int(y) + self._y0) for x, y in zip(xs, ys))

    @property
    def cells(self) -> dict:
        ys, xs = np.nonzero(self.mask)
        g = self._grid
        return {Vec2(int(x) + self._x0, int(y) + self._y0): int(g[y, x]) for x, y in zip(xs, ys)}

    def __getitem__(self, v) -> int:
        x, y = v[0] - self._x0, v[1] - self._y0
        if not (0 <= y < self.height and 0 <= x < self.width) or not self.mask[y, x]:
            raise KeyError(tuple(v))
        return int(self._grid[y, x])

    def rows(self) -> list[list[str]]:
        """Letter names row by row, top row first (rectangles only)."""
        names = self.alphabet.names
        return [[names[a] for a in row] for row in self._grid[::-1].tolist()]

    def to_text(self) -> str:
        return "\n".join(" ".join(r) for r in self.rows())

    # -- identity ---------------------------------------------------------

    def _mask_bytes(self):
        return None if self._mask is None else np.packbits(self._mask).tobytes()

    def __eq__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self._x0 == other._x0
            and self._y0 == other._y0
            and self._grid.shape == other._grid.shape
            and np.array_equal(self._grid, other._grid)
            and np.array_equal(self.mask, other.mask)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._x0, self._y0, self._grid.shape, self._grid.tobytes(), self._mask_bytes()))
        return self._hash

    def sort_key(self):
        """Key of the canonical order: domain as a sorted ``(y, x)`` list, then letters."""
        ys, xs = np.nonzero(self.mask)
        dom = tuple(zip((ys + self._y0).tolist(), (xs + self._x0).tolist()))
        return dom, tuple(self._grid[ys, xs].tolist())

    def __lt__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if self.is_empty:
            return "Pattern(empty)"
        kind = "rect" if self.is_rectangle else f"{len(self)} cells"
        body = "/".join("".join(r) for r in self.rows()) if self.is_rectangle and self._grid.size <= 64 else "..."
        return f"Pattern({self.width}x{self.height} {kind} at {tuple(self.origin)}: {body})"


def _letter(alphabet: Alphabet, a) -> int:
    if isinstance(a, str):
        return alphabet.index(a)
    a = int(a)
    if not 0 <= a < len(alphabet):
        raise ValueError(f"letter index {a} out of range")
    return a


def _same_alphabet(p: Pattern, q: Pattern) -> None:
    if p.alphabet != q.alphabet:
        raise AlphabetMismatch("patterns are over different alphabets")


# -- operations -------------------------------------------------------------


def translate(p: Pattern, u) -> Pattern:
    if p.is_empty:
        return p
    return Pattern(p.alphabet, p._grid, (p._x0 + u[0], p._y0 + u[1]), p._mask)


def restrict(p: Pattern, domain: Iterable) -> Pattern:
    domain = {(int(v[0]), int(v[1])) for v in domain}
    if not domain:
        return Pattern.empty(p.alphabet)
    mask = np.zeros(p._grid.shape, dtype=bool)
    pm = p.mask
    for x, y in domain:
        i, j = y - p._y0, x - p._x0
        if not (0 <= i < p.height and 0 <= j < p.width) or not pm[i, j]:
            raise DomainNotContained(f"cell {(x, y)} is outside the pattern domain")
        mask[i, j] = True
    return Pattern(p.alphabet, p._grid, p.origin, mask)


def canonicalize(p: Pattern) -> Pattern:
    if p.is_empty:
        raise EmptyPattern("the empty pattern has no canonical form")
    if p.is_canonical:
        return p
    return Pattern(p.alphabet, p._grid, (0, 0), p._mask)


def occurrences(p: Pattern, q: Pattern) -> set:
    """Offsets ``u`` with ``translate(p, u)`` agreeing with ``q`` on ``p.domain + u``."""
    _same_alphabet(p, q)
    if p.is_empty:
        return {Vec2(0, 0)}
    nx, ny = q.width - p.width + 1, q.height - p.height + 1
    if q.is_empty or nx <= 0 or ny <= 0:
        return set()
    config.check_cells(nx * ny * len(p), "occurrence scan")
    ok = np.ones((ny, nx), dtype=bool)
    qg, qm = q._grid, q.mask
    pg = p._grid
    for dy, dx in zip(*np.nonzero(p.mask)):
        ok &= qg[dy:dy + ny, dx:dx + nx] == pg[dy, dx]
        if q._mask is not None:
            ok &= qm[dy:dy + ny, dx:dx + nx]
    base = Vec2(q._x0 - p._x0, q._y0 - p._y0)
    ys, xs = np.nonzero(ok)
    return {base + (int(x), int(y)) for x, y in zip(xs, ys)}


def appears_in(p: Pattern, q: Pattern) -> bool:
    return bool(occurrences(p, q))


def window_blocks(grid: np.ndarray, m: int, n: int, mask: np.ndarray | None = None) -> np.ndarray:
    """All ``n``-row by ``m``-column windows of ``grid`` (with repeats), shape ``(K, n, m)``."""
    h, w = grid.shape
    if m > w or n > h:
        return np.zeros((0, n, m), dtype=grid.dtype)
    config.check_cells((w - m + 1) * (h - n + 1) * m * n, "window extraction")
    win = sliding_window_view(grid, (n, m))
    if mask is not None:
        full = sliding_window_view(mask, (n, m)).all(axis=(2, 3))
        return np.ascontiguousarray(win[full])
    return np.ascontiguousarray(win.reshape(-1, n, m))


def unique_blocks(blocks: np.ndarray) -> np.ndarray:
    """Deduplicate same-size blocks and sort them in canonical order."""
    k = blocks.shape[0]
    if k == 0:
        return blocks
    flat = np.ascontiguousarray(blocks.reshape(k, -1))
    if flat.shape[1] == 0:
        return blocks[:1]
    keys = flat.view(np.dtype((np.void, flat.shape[1] * flat.itemsize))).ravel()
    _, idx = np.unique(keys, return_index=True)
    return np.ascontiguousarray(blocks[idx])


def block_keys(blocks: np.ndarray) -> list[bytes]:
    k = blocks.shape[0]
    if k == 0:
        return []
    flat = np.ascontiguousarray(blocks.reshape(k, -1))
    return [row.tobytes() for row in flat]


def patterns_from_blocks(alphabet: Alphabet, blocks: np.ndarray) -> list[Pattern]:
    return [Pattern(alphabet, b) for b in blocks]


def subpatterns(q: Pattern, m: int, n: int) -> set:
    """Canonical ``m x n`` rectangles occurring in ``q``."""
    if m < 1 or n < 1:
        raise ValueError("window size must be positive")
    if q.is_empty:
        return set()
    blocks = unique_blocks(window_blocks(q._grid, m, n, q._mask))
    return set(patterns_from_blocks(q.alphabet, blocks))
