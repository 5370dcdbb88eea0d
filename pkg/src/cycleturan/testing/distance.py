"""Edit distance to C_ell-freeness: minimum edge deletions hitting every copy."""

from __future__ import annotations

import numpy as np

from ..graph import Graph, iter_bits

__all__ = ["enumerate_cycles", "f_free_distance", "min_hitting_set", "DEFAULT_COPY_BUDGET"]

DEFAULT_COPY_BUDGET = 200_000
DEFAULT_NODE_BUDGET = 2_000_000


def enumerate_cycles(g: Graph, k: int, budget: int = DEFAULT_COPY_BUDGET) -> list[tuple[int, ...]]:
    """Every copy of C_k once, as a vertex tuple starting at its smallest vertex
    with second vertex smaller than the last. Raises past ``budget`` copies."""
    if k < 3:
        raise ValueError("cycles have at least 3 vertices")
    rows = g.rows
    out = []
    for s in range(g.n):
        above = -1 << (s + 1)
        ns = rows[s] & above
        if ns.bit_count() < 2:
            continue
        path = [s]

        def rec(v, visited):
            if len(path) == k:
                if (rows[v] >> s) & 1 and path[1] < v:
                    out.append(tuple(path))
                    if len(out) > budget:
                        raise ValueError(f"more than {budget} copies of C{k}")
                return
            for w in iter_bits(rows[v] & above & ~visited):
                path.append(w)
                rec(w, visited | (1 << w))
                path.pop()

        for v1 in iter_bits(ns):
            path.append(v1)
            rec(v1, (1 << s) | (1 << v1))
            path.pop()
    return out


def _pack(sets: list[list[int]], m: int) -> np.ndarray:
    words = max(1, (m + 63) // 64)
    arr = np.zeros((len(sets), words), dtype=np.uint64)
    for i, s in enumerate(sets):
        for e in s:
            arr[i, e >> 6] |= np.uint64(1) << np.uint64(e & 63)
    return arr


def _bit(e: int, words: int) -> np.ndarray:
    b = np.zeros(words, dtype=np.uint64)
    b[e >> 6] = np.uint64(1) << np.uint64(e & 63)
    return b


def min_hitting_set(sets: list[list[int]], m: int, node_budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    """Smallest subset of 0..m-1 meeting every set, by branch and bound.

    Branching takes an unhit set with the fewest allowed elements and tries
    each allowed element in turn, forbidding the earlier ones. The bound is
    the larger of a greedy disjoint packing of unhit sets and
    ceil(#unhit / max element degree).
    """
    if not sets:
        return []
    if any(len(s) == 0 for s in sets):
        raise ValueError("an empty set cannot be hit")
    arr = _pack(sets, m)
    words = arr.shape[1]
    popcount = lambda a: np.bitwise_count(a).sum(axis=-1)  # noqa: E731

    # greedy upper bound
    best = []
    rest = arr
    while len(rest):
        deg = _degrees(rest, m)
        e = int(np.argmax(deg))
        best.append(e)
        rest = rest[~(rest & _bit(e, words)).any(axis=1)]
    state = {"best": list(best), "nodes": 0}

    def lower_bound(unhit):
        pack, rem = 0, unhit
        while len(rem):
            pack += 1
            rem = rem[~(rem & rem[0]).any(axis=1)]
        deg = _degrees(unhit, m).max()
        return max(pack, -(-len(unhit) // int(deg)))

    def rec(unhit, chosen, forbidden):
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise RuntimeError(f"branch and bound exceeded {node_budget} nodes")
        if len(unhit) == 0:
            if len(chosen) < len(state["best"]):
                state["best"] = list(chosen)
            return
        if len(chosen) + lower_bound(unhit) >= len(state["best"]):
            return
        allowed = unhit & ~forbidden
        sizes = popcount(allowed)
        i = int(np.argmin(sizes))
        if sizes[i] == 0:
            return
        elems = [w * 64 + b for w in range(words) for b in iter_bits(int(allowed[i, w]))]
        deg = _degrees(unhit, m)
        elems.sort(key=lambda e: -deg[e])
        forb = forbidden.copy()
        for e in elems:
            bit = _bit(e, words)
            chosen.append(e)
            rec(unhit[~(unhit & bit).any(axis=1)], chosen, forb)
            chosen.pop()
            forb = forb | bit

    rec(arr, [], np.zeros(words, dtype=np.uint64))
    return sorted(state["best"])


def _degrees(arr: np.ndarray, m: int) -> np.ndarray:
    deg = np.zeros(m, dtype=np.int64)
    for w in range(arr.shape[1]):
        col = arr[:, w]
        for b in range(min(64, m - 64 * w)):
            deg[64 * w + b] = int(((col >> np.uint64(b)) & np.uint64(1)).sum())
    return deg


def f_free_distance(g: Graph, ell: int, copy_budget: int = DEFAULT_COPY_BUDGET, node_budget: int = DEFAULT_NODE_BUDGET, return_edges: bool = False):
    """Minimum number of edges whose deletion leaves g without C_ell.

    Raises ValueError when g has more than ``copy_budget`` copies and
    RuntimeError when the search exceeds ``node_budget`` nodes.
    """
    copies = enumerate_cycles(g, ell, copy_budget)
    edge_index: dict[tuple[int, int], int] = {}
    sets = []
    for c in copies:
        s = []
        for a, b in zip(c, c[1:] + c[:1]):
            key = (a, b) if a < b else (b, a)
            s.append(edge_index.setdefault(key, len(edge_index)))
        sets.append(s)
    hit = min_hitting_set(sets, len(edge_index), node_budget)
    if return_edges:
        inv = {i: e for e, i in edge_index.items()}
        return len(hit), [inv[i] for i in hit]
    return len(hit)
