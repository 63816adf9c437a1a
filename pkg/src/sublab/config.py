"""Process-wide resource caps and worker counts.

`SUBLAB_CELL_CAP` and `SUBLAB_THREADS` are read once at import time; tests and
the CLI may override them through :func:`configure`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace

from .errors import ResourceLimit

DEFAULT_CAP = 2**24


@dataclass(frozen=True)
class RunConfig:
    cell_cap: int = DEFAULT_CAP
    pattern_cap: int = DEFAULT_CAP
    workers: int = 1

    def __post_init__(self):
        if self.cell_cap < 1 or self.pattern_cap < 1:
            raise ValueError("caps must be positive")
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")


def _from_env() -> RunConfig:
    cfg = RunConfig()
    if os.environ.get("SUBLAB_CELL_CAP"):
        cfg = replace(cfg, cell_cap=int(os.environ["SUBLAB_CELL_CAP"]))
    if os.environ.get("SUBLAB_THREADS"):
        cfg = replace(cfg, workers=int(os.environ["SUBLAB_THREADS"]))
    return cfg


_current = _from_env()


def current() -> RunConfig:
    return _current


def configure(**changes) -> RunConfig:
    global _current
    _current = replace(_current, **changes)
    return _current


@contextmanager
def override(**changes):
    global _current
    saved = _current
    _current = replace(_current, **changes)
    try:
        yield _current
    finally:
        _current = saved


def check_cells(count: int, what: str = "operation") -> None:
    if count > _current.cell_cap:
        raise ResourceLimit(f"{what} needs {count} cells, cap is {_current.cell_cap}")


def check_patterns(count: int, what: str = "operation") -> None:
    if count > _current.pattern_cap:
        raise ResourceLimit(f"{what} needs {count} patterns, cap is {_current.pattern_cap}")
