"""Exact and stochastic search for ex(n, T, F) with T a cycle or path and F
a set of forbidden cycle lengths."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .. import graph6, kernels
from ..constructions import _parse_pattern
from ..counting import count_cycle_copies, count_path_copies, is_L_free
from ..graph import Graph

__all__ = ["ExtremalRecord", "brute_force_ex", "hill_climb_ex", "count_pattern", "BRUTE_FORCE_LIMIT"]

BRUTE_FORCE_LIMIT = 8


def count_pattern(g: Graph, target) -> int:
    kind, k = _parse_pattern(target)
    if kind == "C":
        return count_cycle_copies(g, k)
    return count_path_copies(g, k)


def _norm_forbidden(forbidden) -> tuple:
    if isinstance(forbidden, int):
        forbidden = (forbidden,)
    out = tuple(sorted({int(L) for L in forbidden}))
    if any(L < 3 for L in out):
        raise ValueError("forbidden cycle lengths must be at least 3")
    return out


@dataclass
class ExtremalRecord:
    """Outcome of an extremal search.

    ``exact`` is True for exhaustive results and False for certified lower
    bounds. ``compute_time`` is informational and kept out of ``to_dict``.
    """

    n: int
    target: str
    forbidden: tuple
    value: int
    exact: bool
    witness: Graph
    method: str
    compute_time: float = 0.0
    stats: dict = field(default_factory=dict)

    def verify(self) -> bool:
        """Re-check that the witness is forbidden-free with ``value`` copies."""
        return (
            self.witness.n == self.n
            and is_L_free(self.witness, self.forbidden)
            and count_pattern(self.witness, self.target) == self.value
        )

    def trend(self) -> float | None:
        """value / (l^ceil(k/2) * n^floor(k/2)) for a cycle target and one forbidden length."""
        kind, k = _parse_pattern(self.target)
        if kind != "C" or len(self.forbidden) != 1 or self.n == 0:
            return None
        ell = self.forbidden[0]
        return self.value / (ell ** ((k + 1) // 2) * self.n ** (k // 2))

    def to_dict(self, include_time: bool = False) -> dict:
        d = {
            "n": self.n,
            "target": self.target,
            "forbidden": list(self.forbidden),
            "value": self.value,
            "exact": self.exact,
            "witness_graph6": graph6.encode(self.witness),
            "method": self.method,
            "stats": self.stats,
        }
        if include_time:
            d["compute_time"] = self.compute_time
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExtremalRecord":
        return cls(
            n=d["n"],
            target=d["target"],
            forbidden=tuple(d["forbidden"]),
            value=d["value"],
            exact=d["exact"],
            witness=graph6.decode(d["witness_graph6"]),
            method=d["method"],
            compute_time=d.get("compute_time", 0.0),
            stats=d.get("stats", {}),
        )


def brute_force_ex(n: int, target, forbidden, limit: int = BRUTE_FORCE_LIMIT) -> ExtremalRecord:
    """Exact ex(n, target, forbidden cycles) by exhaustive edge search.

    Edges are decided in lexicographic order; an edge is only included if
    it closes no forbidden cycle, and only edge-maximal graphs are scored
    (adding edges never lowers the target count).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise ValueError(f"n={n} exceeds the exhaustive-search limit {limit}")
    kind, k = _parse_pattern(target)
    forb = _norm_forbidden(forbidden)
    t0 = time.perf_counter()
    if n == 0:
        value, rows, nodes, leaves = 0, (), 1, 1
    else:
        value, rows, nodes, leaves = kernels.ex_search(n, 0 if kind == "C" else 1, k, forb)
    w = Graph(n, rows, check=False)
    return ExtremalRecord(
        n=n,
        target=f"{kind}{k}",
        forbidden=forb,
        value=int(value),
        exact=True,
        witness=w,
        method="brute-force",
        compute_time=time.perf_counter() - t0,
        stats={"nodes": int(nodes), "scored_leaves": int(leaves)},
    )


def _free_after_rows(rows, n, forb) -> bool:
    return is_L_free(Graph(n, rows, check=False), forb)


def hill_climb_ex(
    n: int,
    target,
    forbidden,
    steps: int = 2000,
    restarts: int = 4,
    rng: np.random.Generator | None = None,
    worse_prob: float = 0.05,
) -> ExtremalRecord:
    """Stochastic lower bound for ex(n, target, forbidden cycles).

    Moves: add an edge, remove an edge, swap (remove then add), and clone
    (turn a vertex into a twin of another). Every move keeps the graph
    forbidden-free. Moves that lower the count are accepted with
    probability ``worse_prob``. The best graph seen is re-verified.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    kind, k = _parse_pattern(target)
    tname = f"{kind}{k}"
    forb = _norm_forbidden(forbidden)
    t0 = time.perf_counter()
    best_rows = (0,) * n
    best_val = count_pattern(Graph(n), tname) if n else 0
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]

    def value(rows):
        return count_pattern(Graph(n, rows, check=False), tname)

    def try_add(rows):
        cand = [(u, v) for u, v in pairs if not (rows[u] >> v) & 1]
        if not cand:
            return None
        for idx in rng.permutation(len(cand))[:8]:
            u, v = cand[idx]
            if not kernels.closes_cycle(rows, u, v, forb):
                r = list(rows)
                r[u] |= 1 << v
                r[v] |= 1 << u
                return r
        return None

    def try_remove(rows):
        cand = [(u, v) for u, v in pairs if (rows[u] >> v) & 1]
        if not cand:
            return None
        u, v = cand[int(rng.integers(len(cand)))]
        r = list(rows)
        r[u] &= ~(1 << v)
        r[v] &= ~(1 << u)
        return r

    def try_clone(rows):
        if n < 2:
            return None
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        r = list(rows)
        for x in range(n):  # detach v
            r[x] &= ~(1 << v)
        nb = r[u] & ~(1 << v)
        r[v] = nb
        for x in range(n):
            if (nb >> x) & 1:
                r[x] |= 1 << v
        return r if _free_after_rows(r, n, forb) else None

    evaluated = 0
    for restart in range(restarts):
        rows = [0] * n
        cur = value(rows) if n else 0
        for _ in range(steps):
            move = rng.random()
            if move < 0.5:
                new = try_add(rows)
            elif move < 0.65:
                new = try_remove(rows)
            elif move < 0.85:
                new = try_remove(rows)
                new = try_add(new) if new is not None else None
            else:
                new = try_clone(rows)
            if new is None:
                continue
            val = value(new)
            evaluated += 1
            if val >= cur or rng.random() < worse_prob:
                rows, cur = new, val
                if cur > best_val:
                    best_val, best_rows = cur, tuple(rows)
    witness = Graph(n, best_rows, check=False)
    rec = ExtremalRecord(
        n=n,
        target=tname,
        forbidden=forb,
        value=int(best_val),
        exact=False,
        witness=witness,
        method="hill-climb",
        compute_time=time.perf_counter() - t0,
        stats={"steps": steps, "restarts": restarts, "evaluated": evaluated},
    )
    if not rec.verify():
        raise RuntimeError("hill-climb witness failed re-verification")
    return rec
