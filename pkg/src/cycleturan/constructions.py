"""Extremal constructions: polarity graphs, blow-ups, the triangle booster.

Each builder checks its hypotheses and raises ``ValueError`` when they
fail. ``ConstructionSpec`` names a family plus parameters, serializes to
JSON, builds the graph, and reports the verified properties of the result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import graph6
from .counting import (
    contains_cycle_of_length,
    count_cycle_copies,
    count_path_copies,
    is_L_free,
    shortest_odd_cycle,
)
from .graph import BipartiteGraph, Graph, blow_up

__all__ = [
    "is_prime",
    "PrimeField",
    "polarity_graph",
    "cycle_blowup",
    "path_blowup",
    "general_blowup_sizes",
    "general_blowup",
    "triangle_booster",
    "hard_L_free_instance",
    "balanced_sizes",
    "ConstructionSpec",
    "FAMILIES",
]


def is_prime(p: int) -> bool:
    """Deterministic trial division (inputs here are small)."""
    p = int(p)
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """Residues modulo a prime p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)


def polarity_graph(p: int, return_loops: bool = False):
    """Graph on F_p^2 minus the origin, (a,b) ~ (c,d) iff ac + bd = 1.

    Vertex (a, b) has index a*p + b - 1. Points with a^2 + b^2 = 1 would
    carry loops; those loops are dropped. With ``return_loops`` the number
    of dropped loops is returned as well.
    """
    field_ = PrimeField(p)
    if p < 3:
        raise ValueError("the polarity graph needs p >= 3")
    pts = np.array([(a, b) for a in field_.elements() for b in field_.elements()][1:], dtype=np.int64)
    a, b = pts[:, 0], pts[:, 1]
    adj = (np.outer(a, a) + np.outer(b, b)) % p == 1
    loops = int(adj.diagonal().sum())
    np.fill_diagonal(adj, False)
    g = Graph.from_matrix(adj)
    return (g, loops) if return_loops else g


def balanced_sizes(total: int, parts: int) -> list[int]:
    """Split ``total`` into ``parts`` near-equal sizes, lower indices larger."""
    if parts <= 0:
        return []
    q, r = divmod(total, parts)
    return [q + 1 if i < r else q for i in range(parts)]


def _check_cycle_pair(k: int, ell: int, kmin: int):
    if k < kmin:
        raise ValueError(f"target length must be at least {kmin}")
    if ell < 3:
        raise ValueError("forbidden cycle length must be at least 3")
    if ell == 4:
        raise ValueError("blow-ups always contain C4; use the polarity graph for C4")


def cycle_blowup(k: int, ell: int, m: int) -> Graph:
    """C_k with a maximum independent set (positions 0, 2, ..., 2(k//2 - 1))
    blown up to classes of size m. C_ell-free for ell != k, ell != 4."""
    _check_cycle_pair(k, ell, 3)
    if ell == k:
        raise ValueError("target and forbidden cycle must differ")
    if m < 1:
        raise ValueError("m must be positive")
    big = set(range(0, 2 * (k // 2), 2))
    sizes = [m if i in big else 1 for i in range(k)]
    return blow_up(Graph.cycle(k), sizes)[0]


def path_blowup(k: int, ell: int, m: int) -> Graph:
    """P_k (vertices 0..k) with its even positions blown up to size m.
    Only 4-cycles appear, so the result is C_ell-free for ell != 4."""
    _check_cycle_pair(k, ell, 2)
    if m < 1:
        raise ValueError("m must be positive")
    sizes = [m if i % 2 == 0 else 1 for i in range(k + 1)]
    return blow_up(Graph.path(k), sizes)[0]


def _pattern(target):
    """('C', k) or ('P', k) -> (base graph, independence number, independent positions)."""
    kind, k = _parse_pattern(target)
    if kind == "C":
        if k < 3:
            raise ValueError("cycle targets need k >= 3")
        base = Graph.cycle(k)
        alpha = k // 2
        indep = list(range(k - 1, k - 1 - 2 * alpha, -2))
    else:
        if k < 1:
            raise ValueError("path targets need k >= 1")
        base = Graph.path(k)
        alpha = (k + 2) // 2
        indep = list(range(k, -1, -2))
    return kind, k, base, alpha, sorted(indep)


def _parse_pattern(target):
    if isinstance(target, str):
        t = target.strip().upper()
        if len(t) < 2 or t[0] not in "CP" or not t[1:].isdigit():
            raise ValueError(f"pattern {target!r} must look like C5 or P3")
        return t[0], int(t[1:])
    kind, k = target
    kind = str(kind).upper()
    if kind not in ("C", "P"):
        raise ValueError(f"unknown pattern kind {kind!r}")
    return kind, int(k)


def general_blowup_sizes(target, h: int, n: int) -> list[int]:
    """Class sizes for the C_h-free blow-up of ``target`` on n vertices."""
    kind, k, base, alpha_t, indep = _pattern(target)
    if h < 3:
        raise ValueError("forbidden cycle length must be at least 3")
    t = base.n
    budget = h - h // 2 - 1  # h - alpha(C_h) - 1 vertices outside the independent set
    if budget < t - alpha_t:
        raise ValueError(
            f"need h - alpha(C_h) - 1 >= t - alpha(T): {budget} < {t - alpha_t}"
        )
    if n < budget + alpha_t:
        raise ValueError(f"n must be at least {budget + alpha_t}")
    others = [i for i in range(t) if i not in indep]
    sizes = [0] * t
    for i, s in zip(others, balanced_sizes(budget, len(others))):
        sizes[i] = s
    for i, s in zip(indep, balanced_sizes(n - budget, len(indep))):
        sizes[i] = s
    return sizes


def general_blowup(target, h: int, n: int) -> Graph:
    """Blow-up of a cycle/path target with h - alpha(C_h) - 1 vertices outside
    the independent set; every C_h would need two adjacent independent-set
    vertices, so the graph is C_h-free."""
    kind, k, base, _, _ = _pattern(target)
    return blow_up(base, general_blowup_sizes(target, h, n))[0]


def triangle_booster(gprime: BipartiteGraph, ell: int) -> Graph:
    """Replace each A-vertex by an edge; every cross edge becomes a triangle.

    Vertex layout: A-vertex i becomes 2i and 2i+1, B-vertex j becomes 2a+j.
    The input must be free of C_4, C_6, ..., C_{2 ell}.
    """
    if ell < 3:
        raise ValueError("ell must be at least 3")
    bg = gprime.to_graph()
    for L in range(4, 2 * ell + 1, 2):
        if contains_cycle_of_length(bg, L):
            raise ValueError(f"input contains C{L}; it must be free of C4..C{2 * ell}")
    a = gprime.a
    edges = [(2 * i, 2 * i + 1) for i in range(a)]
    for i, j in gprime.edges():
        edges += [(2 * i, 2 * a + j), (2 * i + 1, 2 * a + j)]
    return Graph.from_edges(2 * a + gprime.b, edges)


def hard_L_free_instance(ell: int, n: int, with_isolated: bool = False) -> Graph:
    """Balanced blow-up of C_{ell+2} (odd ell) on n vertices, optionally with
    one of the n vertices left isolated."""
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ell must be an odd integer >= 3")
    body = n - 1 if with_isolated else n
    if body < ell + 2:
        raise ValueError(f"need at least {ell + 2} non-isolated vertices")
    g = blow_up(Graph.cycle(ell + 2), balanced_sizes(body, ell + 2))[0]
    if with_isolated:
        g = g.disjoint_union(Graph(1))
    return g


# specs -----------------------------------------------------------------

FAMILIES = ("polarity", "cycle-blowup", "path-blowup", "general-blowup", "triangle-booster", "hard-L-free")

_REQUIRED = {
    "polarity": ("p",),
    "cycle-blowup": ("k", "l", "m"),
    "path-blowup": ("k", "l", "m"),
    "general-blowup": ("target", "h", "n"),
    "triangle-booster": ("l", "a", "graph6"),
    "hard-L-free": ("l", "n", "isolated"),
}


@dataclass(frozen=True)
class ConstructionSpec:
    """A construction family and its parameters.

    Triangle-booster inputs are carried as a graph6 string whose first
    ``a`` vertices form side A.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        missing = [k for k in _REQUIRED[self.family] if k not in self.params]
        if missing:
            raise ValueError(f"{self.family} needs parameters {missing}")

    def to_json(self) -> str:
        return json.dumps({"family": self.family, "params": self.params}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ConstructionSpec":
        d = json.loads(text)
        return cls(d["family"], dict(d["params"]))

    def build(self) -> Graph:
        p = self.params
        f = self.family
        if f == "polarity":
            return polarity_graph(int(p["p"]))
        if f == "cycle-blowup":
            return cycle_blowup(int(p["k"]), int(p["l"]), int(p["m"]))
        if f == "path-blowup":
            return path_blowup(int(p["k"]), int(p["l"]), int(p["m"]))
        if f == "general-blowup":
            return general_blowup(p["target"], int(p["h"]), int(p["n"]))
        if f == "triangle-booster":
            bip = BipartiteGraph.from_graph(graph6.decode(p["graph6"]), int(p["a"]))
            return triangle_booster(bip, int(p["l"]))
        return hard_L_free_instance(int(p["l"]), int(p["n"]), bool(p["isolated"]))

    def verify(self, g: Graph) -> dict:
        """Exact properties of ``g`` relevant to this family (JSON-ready)."""
        p = self.params
        f = self.family
        out = {"vertices": g.n, "edges": g.num_edges}
        if f == "polarity":
            q = int(p["p"])
            _, loops = polarity_graph(q, return_loops=True)
            a = g.adjacency_matrix().astype(np.int64)
            common = a @ a
            no_common = int((np.triu(common == 0, 1)).sum())
            degs = sorted(set(g.degrees().tolist()))
            out.update(
                {
                    "C4_free": not contains_cycle_of_length(g, 4),
                    "degrees": degs,
                    "degrees_in_p_minus_1_or_p": set(degs) <= {q - 1, q},
                    "loops_dropped": loops,
                    "loops_at_most_2p": loops <= 2 * q,
                    "pairs_without_common_neighbour": no_common,
                    "pairs_bound_3np": 3 * g.n * q,
                    "P1_copies": count_path_copies(g, 1),
                    "P2_copies": count_path_copies(g, 2),
                }
            )
        elif f in ("cycle-blowup", "path-blowup"):
            k, ell, m = int(p["k"]), int(p["l"]), int(p["m"])
            free = not contains_cycle_of_length(g, ell)
            if f == "cycle-blowup":
                copies, bound, name = count_cycle_copies(g, k), m ** (k // 2), f"C{k}"
            else:
                copies, bound, name = count_path_copies(g, k), m ** ((k + 2) // 2), f"P{k}"
            out.update({f"C{ell}_free": free, f"copies_of_{name}": copies, "copies_lower_bound": bound})
        elif f == "general-blowup":
            kind, k = _parse_pattern(p["target"])
            h = int(p["h"])
            copies = count_cycle_copies(g, k) if kind == "C" else count_path_copies(g, k)
            out.update(
                {
                    f"C{h}_free": not contains_cycle_of_length(g, h),
                    f"copies_of_{kind}{k}": copies,
                    "class_sizes": general_blowup_sizes(p["target"], h, int(p["n"])),
                }
            )
        elif f == "triangle-booster":
            ell = int(p["l"])
            bip = BipartiteGraph.from_graph(graph6.decode(p["graph6"]), int(p["a"]))
            out.update(
                {
                    "triangles": count_cycle_copies(g, 3),
                    "input_edges": bip.num_edges,
                    f"C{2 * ell}_free": not contains_cycle_of_length(g, 2 * ell),
                }
            )
        else:
            ell = int(p["l"])
            odd = list(range(3, ell + 1, 2))
            out.update(
                {
                    "odd_girth": shortest_odd_cycle(g),
                    "free_of_odd_cycles_up_to_l": is_L_free(g, odd),
                    f"contains_C{ell + 2}": contains_cycle_of_length(g, ell + 2),
                    "isolated_vertices": int((g.degrees() == 0).sum()),
                }
            )
        return out
