"""Desubstitution phases, Solomyak certificates and the complexity floors.

A *phase* of a pattern ``p`` under ``s^k`` is the residue ``t mod (M^k, N^k)``
of a translation ``t`` such that ``p`` is the restriction of ``tau_t(s^k(c))``
for some configuration ``c`` of the subshift.  Configurations are never
materialised: ``c`` is replaced by its restriction to the smallest letter
rectangle whose image covers ``p``, and that restriction ranges over the
exact language of the rectangle's size.

Radius convention: a certificate of radius ``rho`` states that every full
``rho x rho`` language pattern has one phase under ``s``.  Every pattern whose
support merely fits in a ``rho x rho`` box but is extendable in the subshift
inherits uniqueness only when its support contains such a square, so the
check on full squares is the reading used throughout.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import config
from .errors import BoundViolation, NoExtension, NotSquare, PreconditionFailed
from .language import complexity, language, require_enumerable
from .patterns import Pattern, Vec2, block_keys, unique_blocks
from .substitution import Substitution, blow_up, determining_positions, is_invertible, power, power_determining_position


def _cover(t: int, lo: int, hi: int, step: int) -> tuple[int, int]:
    """Index of the first supertile and number of supertiles covering ``[lo, hi]`` at phase ``t``."""
    first = (lo - t) // step
    last = (hi - t) // step
    return first, last - first + 1


@dataclass(frozen=True)
class DesubReport:
    pattern: Pattern
    power: int
    phases: frozenset
    # phase -> (preimage letter rectangle q, position of q's lower-left supertile)
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def unique(self) -> bool:
        return len(self.phases) == 1


def desub_phases(s: Substitution, k: int, p: Pattern) -> DesubReport:
    require_enumerable(s)
    if k < 1:
        raise ValueError("desubstitution power must be at least 1")
    if p.is_empty:
        raise ValueError("cannot desubstitute the empty pattern")
    table = power(s, k).table
    sy, sx = table.shape[1:]
    x0, y0 = p.origin
    x1, y1 = x0 + p.width - 1, y0 + p.height - 1
    phases = set()
    witnesses = {}
    for ty in range(sy):
        for tx in range(sx):
            ux, w = _cover(tx, x0, x1, sx)
            uy, h = _cover(ty, y0, y1, sy)
            ox, oy = tx + sx * ux, ty + sy * uy
            config.check_cells(w * h * sx * sy * len(s.alphabet), "phase test")
            vals = np.zeros((h * sy, w * sx), dtype=p.grid.dtype)
            known = np.zeros((h * sy, w * sx), dtype=bool)
            vals[y0 - oy:y0 - oy + p.height, x0 - ox:x0 - ox + p.width] = p.grid
            known[y0 - oy:y0 - oy + p.height, x0 - ox:x0 - ox + p.width] = p.mask
            vals4 = vals.reshape(h, sy, w, sx).transpose(0, 2, 1, 3)
            known4 = known.reshape(h, sy, w, sx).transpose(0, 2, 1, 3)
            # compat[a, v, u]: letter a at supertile (u, v) agrees with p
            compat = ((vals4[None] == table[:, None, None]) | ~known4[None]).all(axis=(3, 4))
            cands = language(s, w, h).blocks
            ok = compat[cands, np.arange(h)[:, None], np.arange(w)[None, :]].all(axis=(1, 2))
            hit = np.flatnonzero(ok)
            if hit.size:
                t = Vec2(tx, ty)
                phases.add(t)
                witnesses[t] = (Pattern(s.alphabet, cands[hit[0]]), Vec2(ox, oy))
    return DesubReport(p, k, frozenset(phases), witnesses)


def witness_agrees(s: Substitution, k: int, p: Pattern, q: Pattern, placement) -> bool:
    """Cell-by-cell check that ``p`` agrees with the image of ``q`` placed at ``placement``."""
    img = power(s, k).table
    sy, sx = img.shape[1:]
    for (x, y), a in p.cells.items():
        rx, ry = x - placement[0], y - placement[1]
        u, v = rx // sx, ry // sy
        if not (0 <= u < q.width and 0 <= v < q.height):
            return False
        if img[q[(u, v)], ry - v * sy, rx - u * sx] != a:
            return False
    return True


@functools.lru_cache(maxsize=1024)
def _phase_counts(s: Substitution, k: int, m: int, n: int) -> dict:
    """Number of phases of every ``m x n`` language pattern under ``s^k``, keyed by block bytes."""
    table = power(s, k).table
    sy, sx = table.shape[1:]
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for ty in range(sy):
        for tx in range(sx):
            ux, w = _cover(tx, 0, m - 1, sx)
            uy, h = _cover(ty, 0, n - 1, sy)
            groups.setdefault((w, h), []).append((sx * -ux - tx, sy * -uy - ty))
    counts: Counter = Counter()
    target = language(s, m, n)
    for (w, h), crops in sorted(groups.items()):
        cands = language(s, w, h).blocks
        config.check_cells(cands.shape[0] * w * h * sx * sy, "phase blow-up")
        big = blow_up(table, cands)
        for cx, cy in crops:
            found = unique_blocks(np.ascontiguousarray(big[:, cy:cy + n, cx:cx + m]))
            counts.update(block_keys(found))
    if not set(counts) <= target.keys:
        raise AssertionError("a blown-up language pattern fell outside the language")
    return dict(counts)


def all_unique(s: Substitution, k: int, m: int, n: int) -> bool:
    """Whether every ``m x n`` language pattern has exactly one phase under ``s^k``."""
    require_enumerable(s)
    counts = _phase_counts(s, k, m, n)
    return len(counts) == len(language(s, m, n)) and all(c == 1 for c in counts.values())


def phase_multiplicities(s: Substitution, k: int, m: int, n: int) -> list[tuple[Pattern, int]]:
    require_enumerable(s)
    counts = _phase_counts(s, k, m, n)
    lang = language(s, m, n)
    return [(p, counts.get(key, 0)) for p, key in zip(lang.sorted(), block_keys(lang.blocks))]


def _require_square(s: Substitution) -> None:
    require_enumerable(s)
    if not s.is_square:
        raise NotSquare(f"bound certification needs a square substitution, got {s.width}x{s.height}")


@dataclass(frozen=True)
class AperiodicityCertificate:
    """Radius ``rho`` at which every ``rho x rho`` pattern desubstitutes uniquely.

    Constructing one re-runs the exhaustive uniqueness test.
    """

    rho: int
    substitution: Substitution = field(repr=False)
    K: Fraction = field(init=False)

    def __post_init__(self):
        if self.rho < 1:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "K", 1 + Fraction(1, (self.rho + 1) ** 2))
        if not is_invertible(self.substitution):
            raise ValueError("two letters share an image; unique phases do not rule out periods")
        if not all_unique(self.substitution, 1, self.rho, self.rho):
            raise ValueError(f"some {self.rho}x{self.rho} pattern has several phases")


def solomyak_radius(s: Substitution, rho_max: int) -> AperiodicityCertificate | None:
    """Least certifying radius up to ``rho_max``; ``None`` means unknown, not periodic.

    Unique phases only force a period of ``sigma(c)`` to come from a period of
    ``c`` when letters have distinct images, so non-invertible input is never
    certified: sending both letters to one non-constant block gives unique
    phases and a periodic subshift.
    """
    _require_square(s)
    require_enumerable(s)
    if not is_invertible(s):
        return None
    for rho in range(1, rho_max + 1):
        if all_unique(s, 1, rho, rho):
            return AperiodicityCertificate(rho, s)
    return None


def unique_desub_depth(s: Substitution, n: int, k_max: int | None = None) -> int:
    """Largest ``k`` such that every ``n x n`` pattern has a unique phase under ``s^k``.

    Uniqueness at ``k`` implies it at every smaller power, so the scan stops at
    the first failure.  It also needs at least ``M^(2k)`` distinct patterns
    (every phase is realised), which bounds the scan when ``k_max`` is None.
    """
    _require_square(s)
    size = complexity(s, n, n)
    depth = 0
    k = 1
    while k_max is None or k <= k_max:
        if s.width ** (2 * k) > size or not all_unique(s, k, n, n):
            break
        depth = k
        k += 1
    return depth


def lemma11_radius(rho: int, M: int, k: int) -> int:
    """Side length guaranteeing unique desubstitution by the ``k``-th power."""
    if rho < 1 or M < 2 or k < 1:
        raise ValueError("need rho >= 1, M >= 2, k >= 1")
    return (rho + 1) * M ** (k - 1) - 1


def bound_karimoutot(m: int, n: int) -> int:
    return m * n + 1


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceiling_sum(n: int, step: int) -> int:
    return sum(_ceil_div(n - i, step) for i in range(step))


def bound_turbolemme(n: int, M: int, k: int) -> Fraction:
    c = _ceil_div(n, M**k)
    return n * n * (1 + Fraction(1, c * c))


def _extension_index(ext: np.ndarray, w: int, h: int) -> dict[bytes, int]:
    """Map each interior block to the index of its least margin-1 extension."""
    out: dict[bytes, int] = {}
    inner = np.ascontiguousarray(ext[:, 1:1 + h, 1:1 + w])
    for i, key in enumerate(block_keys(inner) if inner.size else [b""] * ext.shape[0]):
        out.setdefault(key, i)
    return out


def turbolemme_injection(s: Substitution, k: int, n: int) -> dict:
    """The injection used to push small-pattern counts into ``n x n`` counts.

    Keys are ``(i, j, p)`` with ``p`` a language pattern of size
    ``ceil((n-i)/M^k) x ceil((n-j)/M^k)``; values are the ``n x n`` windows of
    the image of the least margin-1 extension of ``p``, shifted so that the
    determining position lands on ``(i, j)``.
    """
    _require_square(s)
    if k < 1:
        raise ValueError("power must be at least 1")
    dp = power_determining_position(s, k)
    if dp is None:
        dps = determining_positions(power(s, k))
        if not dps:
            raise PreconditionFailed("the power has no determining position")
        dp = min(dps)
    if not all_unique(s, k, n, n):
        raise PreconditionFailed(f"not every {n}x{n} pattern desubstitutes uniquely at power {k}")
    table = power(s, k).table
    step = table.shape[1]
    d1, d2 = dp.pos
    out = {}
    for j in range(step):
        for i in range(step):
            w, h = _ceil_div(n - i, step), _ceil_div(n - j, step)
            ww, hh = max(w, 0), max(h, 0)
            ext = language(s, ww + 2, hh + 2).blocks
            first = _extension_index(ext, ww, hh)
            if ww and hh:
                smalls = language(s, ww, hh).sorted()
            else:
                smalls = [Pattern.empty(s.alphabet)]
            big = None
            for p in smalls:
                key = np.ascontiguousarray(p.grid).tobytes() if not p.is_empty else b""
                if key not in first:
                    raise NoExtension(f"{p!r} has no margin-1 extension in the language")
                img = blow_up(table, ext[first[key]])
                cx, cy = step - i + d1, step - j + d2
                big = Pattern(s.alphabet, img[cy:cy + n, cx:cx + n])
                out[(i, j, p)] = big
    return out


@dataclass(frozen=True)
class BoundRow:
    n: int
    complexity: int
    km_floor: int
    turbo_floor: Fraction
    k_of_n: int
    kn2_floor: Fraction
    ratio: Fraction
    maximal: bool  # (rho+1) M^k(n) - 1 > n

    @property
    def holds(self) -> bool:
        return (
            self.complexity >= self.km_floor
            and self.complexity >= self.turbo_floor
            and self.complexity >= self.kn2_floor
            and self.maximal
        )


@dataclass(frozen=True)
class BoundReport:
    certificate: AperiodicityCertificate
    rows: tuple[BoundRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.rows)

    @property
    def max_ratio(self) -> Fraction:
        return max(r.ratio for r in self.rows)

    def check(self) -> None:
        bad = [r.n for r in self.rows if not r.holds]
        if bad:
            raise BoundViolation(f"complexity floors fail at n = {bad}")


def verify_bounds(s: Substitution, n_max: int, rho_max: int, strict: bool = True) -> BoundReport:
    from .errors import UnknownAperiodicity

    _require_square(s)
    if not determining_positions(s):
        raise PreconditionFailed("the substitution has no determining position")
    cert = solomyak_radius(s, rho_max)
    if cert is None:
        raise UnknownAperiodicity(f"no certifying radius up to {rho_max}")
    M = s.width
    rows = []
    for n in range(1, n_max + 1):
        c = complexity(s, n, n)
        k = unique_desub_depth(s, n)
        rows.append(
            BoundRow(
                n=n,
                complexity=c,
                km_floor=bound_karimoutot(n, n),
                turbo_floor=bound_turbolemme(n, M, k),
                k_of_n=k,
                kn2_floor=cert.K * n * n,
                ratio=Fraction(c, n * n),
                maximal=(cert.rho + 1) * M**k - 1 > n,
            )
        )
    report = BoundReport(cert, tuple(rows))
    if strict:
        report.check()
    return report
