"""Kernel dispatch between the compiled extension and the Python fallback.

The compiled module is used when it imports; setting the environment
variable ``CYCLETURAN_PURE=1`` forces the fallback. ``use_backend`` switches
at runtime (tests and benchmarks compare both).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from . import _pure
from .graph import Graph

try:
    from . import _ext
except ImportError:  # extension not built
    _ext = None

AVAILABLE = ("python",) + (("cython",) if _ext is not None else ())
BACKEND = "cython" if _ext is not None and not os.environ.get("CYCLETURAN_PURE") else "python"


def set_backend(name: str) -> None:
    global BACKEND
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} unavailable; have {AVAILABLE}")
    BACKEND = name


@contextmanager
def use_backend(name: str):
    old = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def _fast() -> bool:
    return BACKEND == "cython"


def count_cycles(g: Graph, k: int) -> int:
    if _fast():
        ip, ix = g.csr()
        return int(_ext.count_cycles(g.words(), ip, ix, g.n, k))
    return _pure.count_cycles(g, k)


def count_paths(g: Graph, k: int, start: int = -1) -> int:
    if _fast():
        ip, ix = g.csr()
        return int(_ext.count_paths(g.words(), ip, ix, g.n, k, start))
    return _pure.count_paths(g, k, start)


def has_cycle(g: Graph, length: int) -> bool:
    if _fast():
        ip, ix = g.csr()
        return bool(_ext.has_cycle(g.words(), ip, ix, g.n, length))
    return _pure.has_cycle(g, length)


def _dense_u8(g: Graph) -> np.ndarray:
    a = g._cache.get("u8")
    if a is None:
        a = np.ascontiguousarray(g.adjacency_matrix(), dtype=np.uint8)
        g._cache["u8"] = a
    return a


def partition_count(g: Graph, assign, s: int, closed: bool) -> int:
    """Class-ordered path (closed=False) or cycle (closed=True) count."""
    assign = np.asarray(assign, dtype=np.int32)
    if _fast():
        # int64 is exact while every product of class sizes stays below 2^62
        sizes = np.bincount(assign[assign >= 0], minlength=s)
        if float(np.prod(np.maximum(sizes, 1).astype(float))) < 2.0**62:
            return int(_ext.partition_count(_dense_u8(g), np.ascontiguousarray(assign), s, closed))
    return _pure.partition_count(g, assign.tolist(), s, closed)


def maxcut_exact(g: Graph):
    if _fast() and g.n <= 63:
        value, mask = _ext.maxcut_exact(g.words(), g.n)
        return int(value), int(mask)
    return _pure.maxcut_exact(g)


def maxcut_local(g: Graph, side: np.ndarray) -> int:
    """Local search from ``side`` (int8 0/1 array, modified in place)."""
    if side.dtype != np.int8 or not side.flags.c_contiguous:
        raise TypeError("side must be a contiguous int8 array")
    if _fast():
        ip, ix = g.csr()
        return int(_ext.maxcut_local(ip, ix, side))
    return _pure.maxcut_local(g, side)


def path_exists(rows, u: int, v: int, length: int) -> bool:
    if _fast() and len(rows) <= 32:
        return bool(_ext.path_exists(rows, u, v, length))
    return _pure.path_exists(rows, u, v, length)


def closes_cycle(rows, u: int, v: int, lengths) -> bool:
    if _fast() and len(rows) <= 32:
        return bool(_ext.closes_cycle(rows, u, v, lengths))
    return _pure.closes_cycle(rows, u, v, lengths)


def ex_search(n: int, kind: int, k: int, forbidden):
    """(best, witness rows, nodes, leaves) for the exhaustive extremal search."""
    if _fast() and n <= 32:
        return _ext.ex_search(n, kind, k, tuple(forbidden))
    return _pure.ex_search(n, kind, k, tuple(forbidden))
