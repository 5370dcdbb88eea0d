"""Pure-Python kernels (fallback when the compiled module is unavailable).

Every function here has a twin with the same signature and results in the
compiled ``_ext`` module; ``kernels.py`` chooses between them.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, iter_bits


def _above(v: int) -> int:
    """Mask selecting bits strictly above position v (negative int, infinite)."""
    return -1 << (v + 1)


# cycles and paths -------------------------------------------------------

def count_cycles(g: Graph, k: int) -> int:
    """Unlabeled copies of C_k.

    Each cycle is traversed once: it starts at its smallest vertex s and
    its second vertex is smaller than its last one.
    """
    rows = g.rows
    total = 0
    for s in range(g.n):
        ns = rows[s] & _above(s)
        if ns.bit_count() < 2:
            continue
        for v1 in iter_bits(ns):
            close = ns & _above(v1)
            if not close:
                continue
            total += _cycle_rec(rows, v1, (1 << s) | (1 << v1), 1, k, s, close)
    return total


def _cycle_rec(rows, v, visited, depth, k, s, close):
    if depth == k - 2:
        return (rows[v] & close & ~visited).bit_count()
    cnt = 0
    cand = rows[v] & _above(s) & ~visited
    for w in iter_bits(cand):
        cnt += _cycle_rec(rows, w, visited | (1 << w), depth + 1, k, s, close)
    return cnt


def count_paths(g: Graph, k: int, start: int = -1) -> int:
    """Labeled paths with k edges (ordered by endpoint), optionally from ``start``."""
    rows = g.rows
    starts = range(g.n) if start < 0 else (start,)
    if k == 0:
        return len(starts)
    total = 0
    for s in starts:
        total += _path_rec(rows, s, 1 << s, k)
    return total


def _path_rec(rows, v, visited, rem):
    cand = rows[v] & ~visited
    if rem == 1:
        return cand.bit_count()
    cnt = 0
    for w in iter_bits(cand):
        cnt += _path_rec(rows, w, visited | (1 << w), rem - 1)
    return cnt


def _bfs_dist(rows, s, allowed):
    """Distances from s inside the vertex mask ``allowed`` (dict)."""
    dist = {s: 0}
    seen = 1 << s
    frontier = 1 << s
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        nxt &= allowed & ~seen
        for v in iter_bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def has_cycle(g: Graph, length: int) -> bool:
    """Whether g contains a cycle with exactly ``length`` vertices."""
    n = g.n
    if length < 3 or length > n:
        return False
    rows = g.rows
    if length == 3:
        for v in range(n):
            r = rows[v] & _above(v)
            for u in iter_bits(r):
                if rows[u] & r:
                    return True
        return False
    for s in range(n):
        allowed = _above(s) | (1 << s)
        ns = rows[s] & _above(s)
        if ns.bit_count() < 2:
            continue
        dist = _bfs_dist(rows, s, allowed)
        if _hc_rec(rows, s, 1 << s, 0, length, ns, dist):
            return True
    return False


def _hc_rec(rows, v, visited, depth, length, ns, dist):
    # v sits at position ``depth`` of the path s = p0, p1, ...
    if depth == length - 2:
        return bool(rows[v] & ns & ~visited)
    need = length - depth - 1  # edges still to walk after stepping to w
    for w in iter_bits(rows[v] & ~visited):
        dw = dist.get(w)
        if dw is None or dw > need:
            continue
        if _hc_rec(rows, w, visited | (1 << w), depth + 1, length, ns, dist):
            return True
    return False


def path_exists(rows, u: int, v: int, length: int) -> bool:
    """Whether a simple u-v path with exactly ``length`` edges exists."""
    if length == 1:
        return bool((rows[u] >> v) & 1)
    return _pe_rec(rows, u, (1 << u) | (1 << v), v, length)


def _pe_rec(rows, x, visited, target, rem):
    if rem == 1:
        return bool((rows[x] >> target) & 1)
    for w in iter_bits(rows[x] & ~visited):
        if rem == 2:
            if (rows[w] >> target) & 1:
                return True
            continue
        if _pe_rec(rows, w, visited | (1 << w), target, rem - 1):
            return True
    return False


def closes_cycle(rows, u: int, v: int, lengths) -> bool:
    """Whether adding edge uv would create a cycle whose length is in ``lengths``."""
    for L in lengths:
        if path_exists(rows, u, v, L - 1):
            return True
    return False


# partition-restricted counts ------------------------------------------

def partition_count(g: Graph, assign, s: int, closed: bool) -> int:
    """p (closed=False) or c (closed=True) over classes 0..s-1.

    ``assign[v]`` is the class of v, or -1 when v is in no class.
    """
    masks = [0] * s
    for v, c in enumerate(assign):
        if c >= 0:
            masks[c] |= 1 << v
    if any(m == 0 for m in masks):
        return 0
    rows = g.rows

    def layered(init):
        f = init
        for i in range(1, s):
            nxt = {}
            mi = masks[i]
            for v, c in f.items():
                for w in iter_bits(rows[v] & mi):
                    nxt[w] = nxt.get(w, 0) + c
            if not nxt:
                return {}
            f = nxt
        return f

    if not closed:
        return sum(layered({v: 1 for v in iter_bits(masks[0])}).values())
    total = 0
    last = masks[s - 1]
    for u in iter_bits(masks[0]):
        if not rows[u] & last:
            continue
        f = layered({u: 1})
        total += sum(c for w, c in f.items() if (rows[u] >> w) & 1)
    return total


# max cut ----------------------------------------------------------------

def maxcut_exact(g: Graph):
    """Exact max cut; returns (value, side mask). Vertex n-1 stays on side 0.

    Vectorised: the cut restricted to the low vertices is tabulated for all
    2^lo masks, then the remaining vertices are enumerated on top of it.
    """
    n = g.n
    if n <= 1:
        return 0, 0
    free = n - 1
    lo = min(free, 20)
    hi = free - lo
    rows = g.rows
    size = 1 << lo
    masks = np.arange(size, dtype=np.uint32)
    cut = np.zeros(1, dtype=np.int32)
    for j in range(lo):
        nb = rows[j] & ((1 << j) - 1)
        pc = np.bitwise_count(masks[: 1 << j] & np.uint32(nb)).astype(np.int32)
        cut = np.concatenate([cut + pc, cut + (nb.bit_count() - pc)])
    lowmask = size - 1
    outer = list(range(lo, n))  # high vertices, then the fixed vertex n-1
    pcs = []
    for h in outer:
        nb = rows[h] & lowmask
        pcs.append((np.bitwise_count(masks & np.uint32(nb)).astype(np.int32), nb.bit_count()))
    best, best_mask = -1, 0
    for hm in range(1 << hi):
        side = {h: (hm >> (h - lo)) & 1 for h in outer[:-1]}
        side[n - 1] = 0
        base = 0
        for a_i, a in enumerate(outer):
            for b in outer[a_i + 1:]:
                if (rows[a] >> b) & 1 and side[a] != side[b]:
                    base += 1
        total = cut + base
        for (pc, dg), h in zip(pcs, outer):
            total = total + ((dg - pc) if side[h] else pc)
        i = int(np.argmax(total))
        val = int(total[i])
        if val > best:
            best = val
            best_mask = i | (hm << lo)
    return best, best_mask


def maxcut_local(g: Graph, side) -> int:
    """Best-improvement single-vertex flips from ``side`` (int8 0/1, updated in place).

    Ties go to the lowest vertex index. Returns the final cut size.
    """
    n = g.n
    if n == 0:
        return 0
    a = g.adjacency_matrix().astype(np.int64)
    s = 2 * side.astype(np.int64) - 1
    h = a @ s
    gain = s * h  # same-side minus cross-side neighbours
    while True:
        v = int(np.argmax(gain))
        if gain[v] <= 0:
            break
        s[v] = -s[v]
        h += 2 * s[v] * a[:, v]
        gain = s * h
    side[:] = (s > 0).astype(side.dtype)
    return int((g.num_edges * 2 - int(s @ h)) // 4)


# brute-force extremal search -----------------------------------------

def count_target(rows, n: int, kind: int, k: int) -> int:
    """Copies of C_k (kind 0) or P_k (kind 1) in a graph given by rows."""
    g = Graph(n, rows, check=False)
    if kind == 0:
        return count_cycles(g, k)
    if k == 0:
        return n
    return count_paths(g, k) // 2


def ex_search(n: int, kind: int, k: int, forbidden, prune_exclusions: bool = True):
    """Exhaustive edge DFS for ex(n, target, forbidden cycles).

    Returns (best value, witness rows, nodes visited, maximal leaves).
    Edges are decided in lexicographic order, inclusion first. An inclusion
    is pruned when it closes a forbidden cycle; an exclusion is pruned when
    the excluded edge could never close one later (the leaf would not be
    edge-maximal).
    """
    forbidden = tuple(sorted({L for L in forbidden if 3 <= L <= n}))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    E = len(edges)
    # rows of all edges with index >= i
    suffix = [[0] * n for _ in range(E + 1)]
    for i in range(E - 1, -1, -1):
        suffix[i] = list(suffix[i + 1])
        u, v = edges[i]
        suffix[i][u] |= 1 << v
        suffix[i][v] |= 1 << u
    rows = [0] * n
    state = {"best": -1, "witness": tuple(rows), "nodes": 0, "leaves": 0}

    def maximal(rows_):
        for u, v in edges:
            if not (rows_[u] >> v) & 1 and not closes_cycle(rows_, u, v, forbidden):
                return False
        return True

    def rec(i):
        state["nodes"] += 1
        if i == E:
            if prune_exclusions or maximal(rows):
                state["leaves"] += 1
                val = count_target(rows, n, kind, k)
                if val > state["best"]:
                    state["best"] = val
                    state["witness"] = tuple(rows)
            return
        u, v = edges[i]
        blocked = closes_cycle(rows, u, v, forbidden)
        if not blocked:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            rec(i + 1)
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
            if prune_exclusions:
                # the edge must end up blocked; test in current + undecided edges
                h = [rows[x] | suffix[i + 1][x] for x in range(n)]
                if not closes_cycle(h, u, v, forbidden):
                    return
        rec(i + 1)

    if not forbidden:
        full = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
        return count_target(full, n, kind, k), tuple(full), 1, 1
    rec(0)
    return state["best"], state["witness"], state["nodes"], state["leaves"]
