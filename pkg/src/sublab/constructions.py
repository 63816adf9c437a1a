"""Explicit constructions: the sparse mn+1 blow-up and the Robinson projection.

The Robinson projection is the two-letter shadow of the Robinson tile
substitution obtained by marking tiles with four outgoing arrows as ``1``.
Its rules are reconstructed from the verbal description of the tile
substitution (lower-left child is a cross, the two side children carry a
single main arrow, the upper-right child repeats the parent's marking); the
tile-level figures are not available, so this reading is a stated
assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotABlowup, SideTooSmall
from .patterns import BINARY, Alphabet, Pattern, window_blocks, unique_blocks
from .substitution import Substitution, blow_up


def robinson_projection() -> Substitution:
    # table[a, y, x]: cross at (0, 0), parent letter kept at (1, 1).
    table = np.array([[[1, 0], [0, a]] for a in (0, 1)])
    return Substitution(BINARY, table)


def sparse_blowup(m: int, n: int) -> Substitution:
    """Binary ``m x n`` substitution keeping the letter at ``(0, 0)`` and 0 elsewhere."""
    if m < 1 or n < 1:
        raise ValueError("blow-up size must be positive")
    table = np.zeros((2, n, m), dtype=np.uint8)
    table[1, 0, 0] = 1
    return Substitution(BINARY, table)


def minimal_code_side(alphabet_size: int) -> int:
    k = 1
    while 2 ** (k * k) < alphabet_size:
        k += 1
    return k


@dataclass(frozen=True, eq=False)
class BlockEncoding:
    source: Alphabet
    side: int
    table: np.ndarray  # (|A|, side, side) binary codes, table[a, y, x]

    @property
    def codes(self) -> dict[int, Pattern]:
        return {a: Pattern(BINARY, self.table[a]) for a in range(len(self.source))}

    def code(self, a: int) -> Pattern:
        return Pattern(BINARY, self.table[a])


def block_encoding(alphabet: Alphabet, k: int | None = None) -> BlockEncoding:
    """Encode letter ``i`` as its binary expansion laid row-major, MSB at the top-left cell."""
    if k is None:
        k = minimal_code_side(len(alphabet))
    elif k < 1 or 2 ** (k * k) < len(alphabet):
        raise SideTooSmall(f"a {k}x{k} binary square cannot encode {len(alphabet)} letters")
    bits = k * k
    table = np.zeros((len(alphabet), k, k), dtype=np.uint8)
    for i in range(len(alphabet)):
        rows = [[(i >> (bits - 1 - (r * k + c))) & 1 for c in range(k)] for r in range(k)]
        table[i] = np.array(rows[::-1])  # rows were built top first
    return BlockEncoding(alphabet, k, table)


def apply_encoding(e: BlockEncoding, p: Pattern) -> Pattern:
    if p.alphabet != e.source:
        raise ValueError("pattern is not over the encoding's source alphabet")
    if p.is_empty:
        return Pattern.empty(BINARY)
    k = e.side
    mask = None if p.is_rectangle else np.kron(p.mask, np.ones((k, k), dtype=bool))
    return Pattern(BINARY, blow_up(e.table, p.grid), (p.origin.x * k, p.origin.y * k), mask)


def decode(e: BlockEncoding, q: Pattern) -> Pattern:
    """Inverse of :func:`apply_encoding` on block-aligned rectangles."""
    k = e.side
    if not q.is_rectangle or q.width % k or q.height % k or q.origin.x % k or q.origin.y % k:
        raise ValueError("fragment is not a block-aligned image")
    lookup = {e.table[a].tobytes(): a for a in range(len(e.source))}
    h, w = q.height // k, q.width // k
    g = q.grid.reshape(h, k, w, k).transpose(0, 2, 1, 3)
    out = np.zeros((h, w), dtype=np.int64)
    for y in range(h):
        for x in range(w):
            key = np.ascontiguousarray(g[y, x]).tobytes()
            if key not in lookup:
                raise ValueError(f"block at {(x, y)} is not a code word")
            out[y, x] = lookup[key]
    return Pattern(e.source, out, (q.origin.x // k, q.origin.y // k))


def sparse_complexity_check(fragment: Pattern, m: int, n: int) -> tuple[int, bool]:
    """Count the ``m x n`` windows of a sparse blow-up image and compare with ``mn + 1``."""
    if fragment.alphabet != BINARY or not fragment.is_rectangle:
        raise ValueError("fragment must be a binary rectangle")
    wins = window_blocks(fragment.grid, m, n)
    ones = wins.reshape(wins.shape[0], -1).sum(axis=1)
    if (ones > 1).any():
        raise NotABlowup(f"an {m}x{n} window contains {int(ones.max())} ones")
    count = unique_blocks(wins).shape[0]
    return count, count <= m * n + 1
