"""Exact counts of cycle and path copies, class-ordered counts, freeness.

Copy convention: a copy is a subgraph (vertex set plus edge set), so a C_k
is counted once, not 2k times, and a P_k once, not twice.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from . import kernels
from .graph import Graph, VertexPartition, iter_bits

__all__ = [
    "count_cycle_copies",
    "count_path_copies",
    "count_paths_from",
    "partition_path_count",
    "partition_cycle_count",
    "contains_cycle_of_length",
    "find_cycle_of_length",
    "is_L_free",
    "shortest_odd_cycle",
    "twin_quotient",
    "QUOTIENT_EDGE_LIMIT",
    "QUOTIENT_MIN_ORDER",
]

# Largest quotient (in edges) handled by the closed-walk solver; its
# support enumeration is exponential in this number.
QUOTIENT_EDGE_LIMIT = 12
# Below this order plain DFS is cheaper than solving closed-walk programs.
QUOTIENT_MIN_ORDER = 32


def count_cycle_copies(g: Graph, k: int) -> int:
    """Number of copies of C_k in g."""
    if k < 3:
        raise ValueError("cycles have at least 3 vertices")
    if k > g.n:
        return 0
    return kernels.count_cycles(g, k)


def count_path_copies(g: Graph, k: int) -> int:
    """Number of copies of P_k (the path with k edges) in g."""
    if k < 1:
        raise ValueError("path length must be at least 1")
    if k >= g.n:
        return 0
    return kernels.count_paths(g, k) // 2


def count_paths_from(g: Graph, v: int, k: int) -> int:
    """Number of paths with k edges having v as an endpoint."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} not in graph")
    if k < 0:
        raise ValueError("path length must be nonnegative")
    return kernels.count_paths(g, k, v)


def _assignment(g: Graph, classes) -> tuple[np.ndarray, int]:
    if isinstance(classes, VertexPartition):
        if classes.graph.n != g.n:
            raise ValueError("partition belongs to a graph of different order")
        return np.asarray(classes.assignment, dtype=np.int32), classes.s
    assign = np.full(g.n, -1, dtype=np.int32)
    s = 0
    for i, cl in enumerate(classes):
        s += 1
        for v in cl:
            v = int(v)
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} not in graph")
            if assign[v] != -1:
                raise ValueError(f"classes overlap at vertex {v}")
            assign[v] = i
    return assign, s


def partition_path_count(g: Graph, classes) -> int:
    """p(U_1, ..., U_s): paths u_1..u_s with u_i in U_i.

    ``classes`` is a VertexPartition or a sequence of disjoint vertex sets.
    """
    assign, s = _assignment(g, classes)
    if s == 0:
        return 0
    return kernels.partition_count(g, assign, s, False)


def partition_cycle_count(g: Graph, classes) -> int:
    """c(U_1, ..., U_s): cycles u_1..u_s u_1 with u_i in U_i (s >= 3)."""
    assign, s = _assignment(g, classes)
    if s < 3:
        raise ValueError("class-ordered cycles need at least 3 classes")
    return kernels.partition_count(g, assign, s, True)


# twin quotient and budgeted closed walks ------------------------------

def twin_quotient(g: Graph) -> tuple[list[list[int]], Graph]:
    """Group vertices with identical neighbourhoods.

    Returns (classes, H) where classes are ordered by smallest member and
    H is the graph on classes. g is the blow-up of H by the class sizes.
    """
    cached = g._cache.get("quotient")
    if cached is not None:
        return cached
    if g.n == 0:
        res = ([], Graph(0))
    else:
        _, first, inverse = np.unique(g.words(), axis=0, return_index=True, return_inverse=True)
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        label = rank[inverse.ravel()]
        classes = [[] for _ in range(order.size)]
        for v, c in enumerate(label.tolist()):
            classes[c].append(v)
        reps = [cl[0] for cl in classes]
        hrows = []
        for r in reps:
            row = 0
            for j, rep in enumerate(reps):
                if (g.rows[r] >> rep) & 1:
                    row |= 1 << j
            hrows.append(row)
        res = (classes, Graph(len(classes), hrows, check=False))
    g._cache["quotient"] = res
    return res


def _connected(edge_list, n_vertices: int) -> bool:
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for u, v in edge_list:
        touched.update((u, v))
        parent[find(u)] = find(v)
    roots = {find(x) for x in touched}
    return len(roots) == 1


def _bipartite(edge_list) -> bool:
    adj = {}
    for u, v in edge_list:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    color = {}
    for s in adj:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return False
    return True


@lru_cache(maxsize=4096)
def _closed_walk(edges: tuple, budgets: tuple, t: int):
    """Edge multiplicities of a closed walk of length t in the graph ``edges``
    visiting vertex i at most budgets[i] times, or None.

    Such a walk exists iff some connected edge set S carries multiplicities
    x_e >= 1 with even vertex sums 2*y_i, y_i <= budgets[i] and total t
    (Euler's theorem turns the multigraph into the walk).
    """
    m = len(edges)
    nv = len(budgets)
    for size in range(1, min(m, t) + 1):
        for sub in combinations(range(m), size):
            es = [edges[i] for i in sub]
            verts = sorted({x for e in es for x in e})
            if sum(budgets[x] for x in verts) < t:
                continue
            if not _connected(es, nv):
                continue
            if t % 2 and _bipartite(es):
                continue
            pos = {x: i for i, x in enumerate(verts)}
            nvar = size + len(verts)
            rows = []
            for x in verts:
                row = np.zeros(nvar)
                for j, (a, b) in enumerate(es):
                    if x in (a, b):
                        row[j] = 1.0
                row[size + pos[x]] = -2.0
                rows.append(row)
            total = np.zeros(nvar)
            total[:size] = 1.0
            rows.append(total)
            a_eq = np.vstack(rows)
            rhs = np.zeros(len(rows))
            rhs[-1] = t
            lb = np.concatenate([np.ones(size), np.ones(len(verts))])
            ub = np.concatenate([np.full(size, t), [budgets[x] for x in verts]])
            res = milp(
                c=np.zeros(nvar),
                constraints=LinearConstraint(a_eq, rhs, rhs),
                integrality=np.ones(nvar),
                bounds=Bounds(lb, ub),
                # HiGHS presolve has been seen to return infeasible points here
                options={"presolve": False},
            )
            if res.status == 0 and res.x is not None:
                sol = np.rint(res.x)
                if not (np.array_equal(a_eq @ sol, rhs) and (sol >= lb).all() and (sol <= ub).all()):
                    raise RuntimeError("integer solver returned a point violating its constraints")
                return tuple((es[j], int(sol[j])) for j in range(size))
            if res.status not in (0, 2):
                raise RuntimeError(f"integer solver failed: {res.message}")
    return None


def _euler_circuit(multi) -> list[int]:
    """Closed walk (as a vertex list, start not repeated) using every edge copy."""
    adj = {}
    for (u, v), mult in multi:
        for _ in range(mult):
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
    used = {}
    for (u, v), mult in multi:
        used[(min(u, v), max(u, v))] = mult
    start = multi[0][0][0]
    stack, walk = [start], []
    while stack:
        x = stack[-1]
        moved = False
        while adj[x]:
            y = adj[x].pop()
            key = (min(x, y), max(x, y))
            if used[key] > 0:
                used[key] -= 1
                stack.append(y)
                moved = True
                break
        if not moved:
            walk.append(stack.pop())
    return walk[:-1]


def _quotient_usable(g: Graph) -> bool:
    if g.n <= QUOTIENT_MIN_ORDER:
        return False
    classes, h = twin_quotient(g)
    return h.num_edges <= QUOTIENT_EDGE_LIMIT and len(classes) < g.n


def _quotient_cycle(g: Graph, length: int):
    classes, h = twin_quotient(g)
    budgets = tuple(len(c) for c in classes)
    sol = _closed_walk(tuple(h.edges()), budgets, length)
    if sol is None:
        return None
    walk = _euler_circuit(sol)
    nxt = [0] * len(classes)
    cycle = []
    for c in walk:
        cycle.append(classes[c][nxt[c]])
        nxt[c] += 1
    return cycle


def _dfs_cycle(g: Graph, length: int):
    rows = g.rows
    n = g.n
    for s in range(n):
        above = -1 << (s + 1)
        ns = rows[s] & above
        if ns.bit_count() < 2:
            continue
        dist = {s: 0}
        frontier, seen, d = 1 << s, 1 << s, 0
        while frontier:
            d += 1
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            nxt &= above & ~seen
            for v in iter_bits(nxt):
                dist[v] = d
            seen |= nxt
            frontier = nxt
        path = [s]

        def rec(v, visited):
            if len(path) == length:
                return bool((rows[v] >> s) & 1)
            need = length - len(path)
            for w in iter_bits(rows[v] & above & ~visited):
                if dist.get(w, need + 1) > need:
                    continue
                path.append(w)
                if rec(w, visited | (1 << w)):
                    return True
                path.pop()
            return False

        if rec(s, 1 << s):
            return path
    return None


def find_cycle_of_length(g: Graph, length: int):
    """A cycle with exactly ``length`` vertices as a vertex list, or None."""
    if length < 3:
        raise ValueError("cycles have at least 3 vertices")
    if length > g.n:
        return None
    if length > 3 and _quotient_usable(g):
        return _quotient_cycle(g, length)
    return _dfs_cycle(g, length)


def contains_cycle_of_length(g: Graph, length: int) -> bool:
    """Whether g contains C_length (length >= 3)."""
    if length < 3:
        raise ValueError("cycles have at least 3 vertices")
    if length > g.n or g.num_edges < length:
        return False
    if length > 3 and _quotient_usable(g):
        classes, h = twin_quotient(g)
        budgets = tuple(len(c) for c in classes)
        return _closed_walk(tuple(h.edges()), budgets, length) is not None
    return kernels.has_cycle(g, length)


def is_L_free(g: Graph, lengths: Iterable[int]) -> bool:
    """True iff g has no cycle whose length lies in ``lengths``.

    Lengths above n are vacuous.
    """
    for L in sorted(set(int(x) for x in lengths)):
        if L < 3:
            raise ValueError("cycle lengths must be at least 3")
        if L > g.n:
            break
        if contains_cycle_of_length(g, L):
            return False
    return True


def shortest_odd_cycle(g: Graph):
    """Odd girth via breadth-first layering from every vertex; None if bipartite.

    From a root r, an edge inside BFS layer d closes an odd walk of length
    2d + 1, and for r on a shortest odd cycle this is the cycle itself.
    """
    rows = g.rows
    best = None
    for r in range(g.n):
        if not rows[r]:
            continue
        seen = frontier = 1 << r
        d = 0
        while frontier:
            if best is not None and 2 * d + 1 >= best:
                break
            if any(rows[v] & frontier for v in iter_bits(frontier)):
                best = 2 * d + 1
                break
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
            d += 1
        if best == 3:
            break
    return best
