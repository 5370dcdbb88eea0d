"""Seeded randomized suites feeding the inequality checks.

Each suite draws instance ``i`` from its own stream ``stream(seed, tag(name), i)``
and runs one check on it, so a suite's outcome depends only on (seed,
trials). ``trials`` counts applicable instances: not-applicable and
vacuous results are drawn past until enough applicable ones were seen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

import numpy as np

from .. import graph6, kernels
from ..counting import is_L_free
from ..graph import BipartiteGraph, Graph, blow_up, random_partition
from ..seeding import stream, tag
from . import checks

__all__ = [
    "SUITE_NAMES",
    "SuiteSummary",
    "run_suite",
    "atlas_graphs",
    "greedy_free",
    "girth_bipartite",
    "projective_incidence",
]

# attempts allowed per requested applicable instance before giving up
MAX_ATTEMPT_FACTOR = 20


@dataclass
class SuiteSummary:
    name: str
    seed: int
    requested: int | None
    attempts: int = 0
    applicable: int = 0
    passed: int = 0
    failed: int = 0
    not_applicable: int = 0
    worst_ratio: Fraction | None = None
    worst_instance: dict | None = None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and (self.requested is None or self.applicable >= self.requested)

    def record(self, res: checks.CheckResult, counts: bool) -> None:
        self.attempts += 1
        if not res.applicable:
            self.not_applicable += 1
            return
        if counts:
            self.applicable += 1
        if res.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(res.to_dict())
        if counts and res.lhs is not None and res.rhs:
            ratio = Fraction(res.lhs) / Fraction(res.rhs)
            if self.worst_ratio is None or ratio > self.worst_ratio:
                self.worst_ratio = ratio
                self.worst_instance = res.instance

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "requested": self.requested,
            "attempts": self.attempts,
            "applicable": self.applicable,
            "passed": self.passed,
            "failed": self.failed,
            "not_applicable": self.not_applicable,
            "worst_ratio": None if self.worst_ratio is None else round(float(self.worst_ratio), 9),
            "worst_instance": self.worst_instance,
            "ok": self.ok,
            "failures": self.failures,
        }


# instance generators ----------------------------------------------------

def greedy_free(n: int, forbidden, rng: np.random.Generator, rows=None, budget: int | None = None, allowed=None) -> Graph:
    """Add random edges that close no forbidden cycle, in random order.

    Starts from ``rows`` (assumed forbidden-free) and stops after ``budget``
    additions (None: until edge-maximal). ``allowed(u, v)`` restricts pairs.
    """
    rows = list(rows) if rows is not None else [0] * n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not (rows[u] >> v) & 1]
    if allowed is not None:
        pairs = [(u, v) for u, v in pairs if allowed(u, v)]
    forb = tuple(sorted(L for L in forbidden if L <= n))
    added = 0
    for idx in rng.permutation(len(pairs)):
        if budget is not None and added >= budget:
            break
        u, v = pairs[idx]
        if forb and kernels.closes_cycle(rows, u, v, forb):
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        added += 1
    return Graph(n, rows, check=False)


def girth_bipartite(a: int, b: int, girth_above: int, rng: np.random.Generator, budget: int | None = None) -> BipartiteGraph:
    """Random bipartite graph with no cycle of length <= ``girth_above``.

    An edge uv is added only when u and v are at distance >= girth_above
    (BFS), so it closes no short cycle. Suited to large sparse instances.
    """
    n = a + b
    adj = [[] for _ in range(n)]
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    edges = []
    limit = girth_above - 1
    for idx in rng.permutation(len(pairs)):
        if budget is not None and len(edges) >= budget:
            break
        u, v = pairs[idx]
        dist = {u: 0}
        frontier = [u]
        close = False
        for d in range(1, limit + 1):
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = d
                        nxt.append(y)
            if v in dist:
                close = True
                break
            frontier = nxt
        if close:
            continue
        adj[u].append(v)
        adj[v].append(u)
        edges.append((u, v - a))
    return BipartiteGraph.from_edges(a, b, edges)


def projective_incidence(p: int) -> BipartiteGraph:
    """Point-line incidence graph of the projective plane over F_p (C4-free)."""
    pts = []
    for x in range(p):
        for y in range(p):
            pts.append((1, x, y))
    for y in range(p):
        pts.append((0, 1, y))
    pts.append((0, 0, 1))
    arr = np.array(pts, dtype=np.int64)
    inc = (arr @ arr.T) % p == 0
    return BipartiteGraph.from_edges(len(pts), len(pts), [(int(i), int(j)) for i, j in zip(*np.nonzero(inc))])


def _planted_cycle(rng, n: int, length: int, forbidden):
    """Rows of a random blow-up of C_length on the first vertices, if forbidden-free."""
    sizes = [1] * length
    extra = int(rng.integers(0, max(1, n - length + 1)))
    for _ in range(extra):
        sizes[int(rng.integers(length))] += 1
    if sum(sizes) > n:
        return None, None
    g, part = blow_up(Graph.cycle(length), sizes)
    if not is_L_free(g, forbidden):
        return None, None
    rows = list(g.rows) + [0] * (n - g.n)
    return rows, part.classes()


def _cycle_classes(rng, n: int, s: int, planted) -> list[list[int]]:
    """Full partition into s classes: planted classes when given (leftovers
    spread at random), otherwise uniform."""
    if planted is not None and rng.random() < 0.6:
        classes = [list(c) for c in planted]
        used = {v for c in classes for v in c}
        for v in range(n):
            if v not in used:
                classes[int(rng.integers(s))].append(v)
        shift = int(rng.integers(s))
        return classes[shift:] + classes[:shift]
    return random_partition(Graph(n), s, rng).classes()


def _free_instance(rng, n: int, forbidden, plant_length: int | None):
    planted = None
    rows = None
    if plant_length is not None and rng.random() < 0.6 and plant_length <= n:
        rows, planted = _planted_cycle(rng, n, plant_length, forbidden)
    pairs = n * (n - 1) // 2
    budget = None if rng.random() < 0.4 else int(rng.integers(0, pairs + 1))
    return greedy_free(n, forbidden, rng, rows=rows, budget=budget), planted


def _cliques_start(rng, n: int, size: int):
    rows = [0] * n
    v = 0
    while v + size <= n and rng.random() < 0.7:
        block = ((1 << size) - 1) << v
        for x in range(v, v + size):
            rows[x] = block & ~(1 << x)
        v += size
    return rows


# suites -----------------------------------------------------------------

def _consecutive_odd(rng):
    k = 2 if rng.random() < 0.8 else 3
    n = int(rng.integers(2 * k + 1, (10 if k == 2 else 12) + 1))
    g, planted = _free_instance(rng, n, (2 * k + 3,), 2 * k + 1)
    return checks.check_cycle_partition_inequality(g, _cycle_classes(rng, n, 2 * k + 1, planted), k)


def _lambda_path(rng):
    s = int(rng.integers(2, 7))
    lam = [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)][int(rng.integers(4))]
    family = int(rng.integers(3))
    if family == 0:
        # forward degree at most floor(lam) between consecutive classes
        sizes = rng.integers(1, 4, size=s).tolist()
        extra = int(rng.integers(0, 4))
        n = sum(sizes) + extra
        starts = np.concatenate([[0], np.cumsum(sizes)]).tolist()
        classes = [list(range(starts[i], starts[i + 1])) for i in range(s)]
        rows = [0] * n
        for i in range(s - 1):
            for u in classes[i]:
                deg = int(rng.integers(0, int(lam) + 1))
                for w in rng.permutation(classes[i + 1])[:deg].tolist():
                    rows[u] |= 1 << w
                    rows[w] |= 1 << u
        noise = int(rng.integers(0, n + 1))
        for _ in range(noise):
            u, v = rng.choice(n, size=2, replace=False).tolist()
            cu = next((i for i, c in enumerate(classes) if u in c), None)
            cv = next((i for i, c in enumerate(classes) if v in c), None)
            if cu is not None and cv is not None and abs(cu - cv) == 1:
                continue
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        g = Graph(n, rows, check=False)
    elif family == 1:
        # blow-up of a path with small classes, random edges removed
        sizes = rng.integers(1, 5, size=s).tolist()
        g, part = blow_up(Graph.path(s - 1), sizes)
        keep = [(u, v) for u, v in g.edges() if rng.random() < 0.8]
        g = Graph.from_edges(g.n, keep)
        classes = part.classes()
    else:
        n = int(rng.integers(s, 15))
        dens = float(rng.uniform(0.05, 0.5))
        mat = np.triu(rng.random((n, n)) < dens, 1)
        g = Graph.from_matrix(mat | mat.T)
        assign = rng.integers(-1, s, size=n)
        classes = [np.flatnonzero(assign == i).tolist() for i in range(s)]
        if any(not c for c in classes):
            perm = rng.permutation(n).tolist()
            classes = [perm[i::s] for i in range(s)]
    return checks.check_lambda_path_bound(g, classes, lam)


def _forbidden_cycles(rng):
    k = 2 if rng.random() < 0.8 else 3
    if rng.random() < 0.5:
        mode, ell = "even-free", int(rng.integers(2, 5))
        forb = 2 * ell
    else:
        mode, ell = "odd-free", int(rng.integers(k + 1, k + 3))
        forb = 2 * ell + 1
    n = int(rng.integers(2 * k + 1, 13))
    g, planted = _free_instance(rng, n, (forb,), 2 * k + 1)
    return checks.check_forbidden_cycles_main(g, _cycle_classes(rng, n, 2 * k + 1, planted), k, ell, mode)


def _even_free_graph(rng):
    ell = int(rng.integers(2, 5))
    n = int(rng.integers(3, 17))
    if rng.random() < 0.4:
        rows = _cliques_start(rng, n, min(2 * ell - 1, n))
    elif rng.random() < 0.5:
        rows = [0] * n
        hub = int(rng.integers(n))
        for v in range(n):
            if v != hub and rng.random() < 0.8:
                rows[hub] |= 1 << v
                rows[v] |= 1 << hub
    else:
        rows = None
    pairs = n * (n - 1) // 2
    budget = None if rng.random() < 0.5 else int(rng.integers(0, pairs + 1))
    if rows is not None and not is_L_free(Graph(n, rows, check=False), (2 * ell,)):
        rows = None
    return greedy_free(n, (2 * ell,), rng, rows=rows, budget=budget), ell


def _p2(rng):
    g, ell = _even_free_graph(rng)
    return checks.check_p2_bound(g, ell)


def _triangle(rng):
    g, ell = _even_free_graph(rng)
    return checks.check_triangle_bound(g, ell)


def _erdos_gallai(rng):
    t = int(rng.integers(3, 6))
    n = int(rng.integers(t + 1, 15))
    if rng.random() < 0.5:
        # disjoint K_t's meet the bound with equality; a few extra edges exceed it
        rows = _cliques_start(rng, n, t)
        g = Graph(n, rows, check=False)
        cand = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
        extra = int(rng.integers(1, 4))
        add = [cand[i] for i in rng.permutation(len(cand))[:extra].tolist()]
        g = g.add_edges(add)
    else:
        dens = float(rng.uniform(0.25, 0.9))
        mat = np.triu(rng.random((n, n)) < dens, 1)
        g = Graph.from_matrix(mat | mat.T)
    return checks.check_erdos_gallai(g, t)


def _zarankiewicz(rng):
    ell = int(rng.integers(2, 5))
    if ell == 2 and rng.random() < 0.2:
        base = projective_incidence([2, 3][int(rng.integers(2))])
        rows = [r for r in base.rows_a if rng.random() < 0.85]
        cols = [j for j in range(base.b) if rng.random() < 0.85] or [0]
        pos = {j: i for i, j in enumerate(cols)}
        edges = [(i, pos[j]) for i, r in enumerate(rows) for j in range(base.b) if (r >> j) & 1 and j in pos]
        bip = BipartiteGraph.from_edges(len(rows), len(cols), edges)
    else:
        a = int(rng.integers(1, 17))
        b = int(rng.integers(1, 17))
        budget = None if rng.random() < 0.6 else int(rng.integers(0, a * b + 1))
        g = greedy_free(a + b, (2 * ell,), rng, budget=budget, allowed=lambda u, v: u < a <= v)
        bip = BipartiteGraph.from_graph(g, a)
    return checks.check_zarankiewicz(bip, ell)


def _trimming(rng):
    ell = 3
    n = int(rng.integers(20, 201))
    if rng.random() < 0.3:
        # one hub in Y joined to all of X and Z; (Z, W) dense and C6-free
        rest = n - 1
        nx, nz = rest // 3, rest // 3
        nw = rest - nx - nz
        X = list(range(nx))
        Y = [nx]
        Z = list(range(nx + 1, nx + 1 + nz))
        W = list(range(nx + 1 + nz, n))
        zw = girth_bipartite(nz, nw, 2 * ell, rng)
        edges = [(x, nx) for x in X] + [(nx, z) for z in Z]
        edges += [(Z[i], W[j]) for i, j in zw.edges()]
    else:
        sizes = rng.multinomial(n, [0.25] * 4)
        sizes = np.maximum(sizes, 1)
        n = int(sizes.sum())
        starts = np.concatenate([[0], np.cumsum(sizes)]).tolist()
        X, Y, Z, W = (list(range(starts[i], starts[i + 1])) for i in range(4))
        edges = []
        for A, B in ((X, Y), (Y, Z), (Z, W)):
            budget = int(rng.integers(0, 3 * (len(A) + len(B)) + 1))
            bg = girth_bipartite(len(A), len(B), 2 * ell, rng, budget=budget)
            edges += [(A[i], B[j]) for i, j in bg.edges()]
    g = Graph.from_edges(n, edges)
    _, _, res = checks.find_trimming_sets(g, X, Y, Z, W, ell)
    return res


_ATLAS = None


def atlas_graphs(max_n: int = 6) -> list[Graph]:
    """All graphs (up to isomorphism) on at most ``max_n`` <= 7 vertices."""
    global _ATLAS
    if _ATLAS is None:
        text = resources.files("cycleturan").joinpath("data/atlas7.g6").read_text()
        _ATLAS = [graph6.decode(line) for line in text.splitlines() if line.strip()]
    return [g for g in _ATLAS if g.n <= max_n]


def _komlos(rng):
    from ..testing.testers import komlos_suite_instance

    return komlos_suite_instance(rng)


_SUITES: dict[str, tuple[Callable, Callable]] = {
    "consecutive-odd": (_consecutive_odd, lambda r: True),
    "lambda-path": (_lambda_path, lambda r: True),
    "forbidden-cycles": (_forbidden_cycles, lambda r: True),
    "p2": (_p2, lambda r: True),
    "triangle": (_triangle, lambda r: True),
    "erdos-gallai": (_erdos_gallai, lambda r: not r.details.get("vacuous", False)),
    "zarankiewicz": (_zarankiewicz, lambda r: True),
    "trimming": (_trimming, lambda r: True),
    "komlos": (_komlos, lambda r: True),
}

SUITE_NAMES = ("partition-identity",) + tuple(_SUITES)

DEFAULT_TRIALS = {name: 10_000 for name in _SUITES}
DEFAULT_TRIALS.update({"trimming": 200, "komlos": 500})


def run_suite(name: str, trials=None, seed: int = 0, on_result=None) -> SuiteSummary:
    """Run a named suite; ``trials`` is the number of applicable instances
    (``"all"`` or None for the partition-identity corpus means every graph)."""
    if name == "partition-identity":
        return _run_identity(trials, seed, on_result)
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    if trials in (None, "all"):
        trials = DEFAULT_TRIALS[name]
    trials = int(trials)
    gen, counts = _SUITES[name]
    summary = SuiteSummary(name, seed, trials)
    key = tag(name)
    i = 0
    while summary.applicable < trials and i < MAX_ATTEMPT_FACTOR * max(trials, 1):
        res = gen(stream(seed, key, i))
        res.instance = {"trial": i, **res.instance}
        summary.record(res, counts(res))
        if on_result is not None:
            on_result(res)
        i += 1
    return summary


def _run_identity(trials, seed: int, on_result) -> SuiteSummary:
    graphs = atlas_graphs(6)
    if trials not in (None, "all"):
        graphs = graphs[: int(trials)]
    summary = SuiteSummary("partition-identity", seed, None)
    for idx, g in enumerate(graphs):
        for k in (3, 4):
            for res in checks.check_random_partition_identity(g, k):
                res.instance = {"atlas_index": idx, **res.instance}
                summary.record(res, True)
                if on_result is not None:
                    on_result(res)
    return summary
