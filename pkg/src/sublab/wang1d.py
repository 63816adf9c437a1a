"""Tilings of the line by two-colour Wang dominoes.

A domino ``(l, r)`` is an edge ``l -> r`` in the colour graph; a set tiles
the line iff that graph has a cycle, and repeating the cycle gives a periodic
tiling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class DominoSet:
    colors: tuple[str, ...]
    dominoes: tuple[tuple[str, str], ...]

    def __init__(self, colors: Iterable[str], dominoes: Iterable[tuple[str, str]]):
        colors = tuple(colors)
        if len(set(colors)) != len(colors):
            raise ValueError("colours must be distinct")
        seen, doms = set(), []
        for l, r in dominoes:
            if l not in colors or r not in colors:
                raise ValueError(f"domino ({l}, {r}) uses an undeclared colour")
            if (l, r) not in seen:
                seen.add((l, r))
                doms.append((l, r))
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "dominoes", tuple(doms))


@dataclass(frozen=True)
class CycleWitness:
    dominoes: tuple[tuple[str, str], ...]

    @property
    def period(self) -> int:
        return len(self.dominoes)

    def is_valid(self) -> bool:
        d = self.dominoes
        return bool(d) and all(d[i][1] == d[(i + 1) % len(d)][0] for i in range(len(d)))

    def tiling(self, length: int) -> list[tuple[str, str]]:
        """The first ``length`` dominoes of the periodic tiling."""
        return [self.dominoes[i % self.period] for i in range(length)]


def _dist_to(target: int, radj: list[list[int]]) -> list[float]:
    dist = [float("inf")] * len(radj)
    dist[target] = 0
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u in radj[v]:
            if dist[u] == float("inf"):
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def tiles_line(d: DominoSet) -> CycleWitness | None:
    """A shortest cycle of the colour graph, or ``None`` when the set cannot tile Z.

    Ties are broken by start colour index, then by the sequence of domino indices.
    """
    idx = {c: i for i, c in enumerate(d.colors)}
    nc = len(d.colors)
    out_edges: list[list[tuple[int, int]]] = [[] for _ in range(nc)]
    radj: list[list[int]] = [[] for _ in range(nc)]
    for e, (l, r) in enumerate(d.dominoes):
        out_edges[idx[l]].append((e, idx[r]))
        radj[idx[r]].append(idx[l])

    # Shortest cycle length through each start colour.
    best_len = None
    per_start = []
    for s in range(nc):
        dist = _dist_to(s, radj)
        cyc = min((1 + dist[v] for _, v in out_edges[s]), default=float("inf"))
        per_start.append((cyc, dist))
        if cyc != float("inf") and (best_len is None or cyc < best_len):
            best_len = int(cyc)
    if best_len is None:
        return None

    for s in range(nc):
        cyc, dist = per_start[s]
        if cyc != best_len:
            continue
        # Greedy walk by domino index, staying on a shortest route back to s.
        path, v = [], s
        for step in range(best_len):
            remaining = best_len - step - 1
            for e, u in out_edges[v]:
                if dist[u] <= remaining:
                    path.append(e)
                    v = u
                    break
        return CycleWitness(tuple(d.dominoes[e] for e in path))
    return None
