"""Uniform rectangular substitutions and their structural analysis."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import config
from .errors import AlphabetMismatch
from .patterns import Alphabet, Pattern, Vec2, _letter


class Substitution:
    """A map sending each letter to an ``M x N`` rectangle over the same alphabet.

    ``table[a, y, x]`` is the letter at cell ``(x, y)`` of the image of ``a``.
    """

    __slots__ = ("alphabet", "table", "__weakref__", "_hash")

    def __init__(self, alphabet: Alphabet, table):
        t = np.array(table, dtype=alphabet.dtype, copy=True)
        if t.ndim != 3 or t.shape[0] != len(alphabet):
            raise ValueError("table must have shape (|A|, N, M)")
        if t.shape[1] < 1 or t.shape[2] < 1:
            raise ValueError("images must be at least 1x1")
        if t.size and int(t.max()) >= len(alphabet):
            raise ValueError("image letter out of alphabet range")
        t.setflags(write=False)
        self.alphabet = alphabet
        self.table = t
        self._hash = None

    @classmethod
    def from_images(cls, alphabet: Alphabet, images: Mapping) -> "Substitution":
        """``images`` maps each letter (index or name) to a full canonical rectangle."""
        grids = {}
        for a, img in images.items():
            if img.alphabet != alphabet:
                raise AlphabetMismatch("image over a different alphabet")
            if not img.is_rectangle or not img.is_canonical or img.is_empty:
                raise ValueError("images must be full canonical rectangles")
            grids[_letter(alphabet, a)] = img.grid
        missing = [alphabet.names[i] for i in range(len(alphabet)) if i not in grids]
        if missing:
            raise ValueError(f"no image for letters {missing}")
        if len({g.shape for g in grids.values()}) != 1:
            raise ValueError("all images must have the same size")
        return cls(alphabet, np.stack([grids[i] for i in range(len(alphabet))]))

    @classmethod
    def from_rows(cls, alphabet: Alphabet, rules: Mapping) -> "Substitution":
        """``rules`` maps letters to rows of letters, top row first."""
        return cls.from_images(alphabet, {a: Pattern.from_rows(alphabet, rows) for a, rows in rules.items()})

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Substitution":
        return cls(alphabet, np.arange(len(alphabet)).reshape(-1, 1, 1))

    @property
    def width(self) -> int:
        return self.table.shape[2]

    @property
    def height(self) -> int:
        return self.table.shape[1]

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height

    @property
    def is_square(self) -> bool:
        return self.width == self.height

    def image(self, a) -> Pattern:
        return Pattern(self.alphabet, self.table[_letter(self.alphabet, a)])

    @property
    def images(self) -> dict[int, Pattern]:
        return {a: self.image(a) for a in range(len(self.alphabet))}

    def __call__(self, p: Pattern) -> Pattern:
        return apply(self, p)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.alphabet == other.alphabet and self.table.shape == other.table.shape and np.array_equal(
            self.table, other.table
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, self.table.shape, self.table.tobytes()))
        return self._hash

    def __repr__(self):
        return f"Substitution({self.width}x{self.height} over {'/'.join(self.alphabet.names)})"


def blow_up(table: np.ndarray, blocks: np.ndarray) -> np.ndarray:
    """Replace every letter of ``blocks`` (shape ``(..., h, w)``) by its ``table`` image."""
    n, m = table.shape[1:]
    h, w = blocks.shape[-2:]
    lead = blocks.shape[:-2]
    out = table[blocks]  # (..., h, w, n, m)
    nd = len(lead)
    axes = tuple(range(nd)) + (nd, nd + 2, nd + 1, nd + 3)
    return np.ascontiguousarray(out.transpose(axes)).reshape(lead + (h * n, w * m))


def apply(s: Substitution, p: Pattern) -> Pattern:
    if p.alphabet != s.alphabet:
        raise AlphabetMismatch("pattern and substitution alphabets differ")
    if p.is_empty:
        return p
    m, n = s.size
    config.check_cells(len(p) * m * n, "substitution image")
    grid = blow_up(s.table, p.grid)
    mask = None if p.is_rectangle else np.kron(p.mask, np.ones((n, m), dtype=bool))
    return Pattern(s.alphabet, grid, (p.origin.x * m, p.origin.y * n), mask)


def compose(outer: Substitution, inner: Substitution) -> Substitution:
    """The substitution ``a -> outer(inner(a))``."""
    if outer.alphabet != inner.alphabet:
        raise AlphabetMismatch("cannot compose substitutions over different alphabets")
    config.check_cells(outer.table.size * inner.width * inner.height, "composition")
    return Substitution(outer.alphabet, blow_up(outer.table, inner.table))


@functools.lru_cache(maxsize=256)
def power(s: Substitution, k: int) -> Substitution:
    if k < 0:
        raise ValueError("power must be non-negative")
    if k == 0:
        return Substitution.identity(s.alphabet)
    if k == 1:
        return s
    config.check_cells(len(s.alphabet) * (s.width * s.height) ** k, "substitution power")
    return compose(s, power(s, k - 1))


# -- primitivity ------------------------------------------------------------


@dataclass(frozen=True)
class PrimitivityReport:
    primitive: bool
    exponent: int | None
    occurrence_relation: np.ndarray

    def __bool__(self):
        return self.primitive


def occurrence_relation(s: Substitution) -> np.ndarray:
    """``R[a, b]`` is true iff ``b`` occurs in the image of ``a``."""
    k = len(s.alphabet)
    r = np.zeros((k, k), dtype=bool)
    for a in range(k):
        r[a, np.unique(s.table[a])] = True
    return r


def wielandt_bound(alphabet_size: int) -> int:
    return (alphabet_size - 1) ** 2 + 1


def is_primitive(s: Substitution) -> PrimitivityReport:
    r = occurrence_relation(s)
    ri = r.astype(np.int64)
    acc = r.copy()
    for k in range(1, wielandt_bound(len(s.alphabet)) + 1):
        if acc.all():
            return PrimitivityReport(True, k, r)
        acc = (acc.astype(np.int64) @ ri) > 0
    return PrimitivityReport(False, None, r)


def is_invertible(s: Substitution) -> bool:
    flat = s.table.reshape(len(s.alphabet), -1)
    return len({row.tobytes() for row in flat}) == len(s.alphabet)


def is_constant(s: Substitution) -> bool:
    """True when every letter has the same image."""
    return bool((s.table == s.table[0]).all())


# -- determining positions --------------------------------------------------


@dataclass(frozen=True, order=True)
class DeterminingPosition:
    """A cell of the image rectangle from which the preimage letter can be read off."""

    pos: Vec2
    size: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "pos", Vec2(*self.pos))
        m, n = self.size
        if not (0 <= self.pos.x < m and 0 <= self.pos.y < n):
            raise ValueError(f"position {tuple(self.pos)} outside a {m}x{n} image")


def determining_positions(s: Substitution) -> frozenset:
    k = len(s.alphabet)
    out = set()
    for y in range(s.height):
        for x in range(s.width):
            if len(np.unique(s.table[:, y, x])) == k:
                out.add(DeterminingPosition(Vec2(x, y), s.size))
    return frozenset(out)


def composed_determining_position(dp_inner: DeterminingPosition, dp_outer: DeterminingPosition) -> Vec2:
    """Determining position of ``compose(outer, inner)`` built from those of its factors."""
    m, n = dp_outer.size
    return Vec2(m * dp_inner.pos.x + dp_outer.pos.x, n * dp_inner.pos.y + dp_outer.pos.y)


def power_determining_position(s: Substitution, k: int) -> DeterminingPosition | None:
    """The determining position of ``power(s, k)`` obtained by iterating the composition rule.

    Starts from the least determining position of ``s``; ``None`` if ``s`` has none.
    """
    dps = determining_positions(s)
    if not dps or k < 1:
        return None
    base = min(dps)
    dp = base
    m, n = s.size
    for i in range(2, k + 1):
        pos = composed_determining_position(dp, base)
        dp = DeterminingPosition(pos, (m**i, n**i))
    return dp
