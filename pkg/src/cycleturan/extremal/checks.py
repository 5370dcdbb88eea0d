"""Mechanical checks of the counting inequalities on concrete instances.

Every check compares exact integers or fractions. A check whose instance
violates the inequality's hypotheses either raises ``PreconditionError``
(hypotheses the caller is expected to guarantee) or returns a result with
status ``not-applicable`` (hypotheses random instances cannot guarantee).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod

import numpy as np

from .. import graph6, kernels
from ..counting import (
    contains_cycle_of_length,
    count_cycle_copies,
    count_path_copies,
    count_paths_from,
    partition_cycle_count,
    partition_path_count,
)
from ..graph import BipartiteGraph, Graph, VertexPartition, iter_bits, odd_cycle_independent_sets, vertex_mask

__all__ = [
    "CheckResult",
    "PreconditionError",
    "PARTITION_IDENTITY_BUDGET",
    "check_random_partition_identity",
    "check_cycle_partition_inequality",
    "check_lambda_path_bound",
    "check_forbidden_cycles_main",
    "check_p2_bound",
    "check_triangle_bound",
    "check_erdos_gallai",
    "check_zarankiewicz",
    "check_consecutive_odd_constant",
    "find_trimming_sets",
    "find_path",
]

PASS, FAIL, NA = "pass", "fail", "not-applicable"

# k^n assignments enumerated by the partition identity (5^8)
PARTITION_IDENTITY_BUDGET = 390625


class PreconditionError(ValueError):
    """The instance does not satisfy a hypothesis the check requires."""


def _num(x):
    """JSON form of an exact number: int, or 'p/q' for a proper fraction."""
    if x is None:
        return None
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)


@dataclass
class CheckResult:
    """Outcome of one check: ``status`` is pass iff lhs <= rhs (when applicable)."""

    name: str
    instance: dict
    lhs: object
    rhs: object
    status: str
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @property
    def applicable(self) -> bool:
        return self.status != NA

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "status": self.status,
            "counterexample": self.counterexample,
            "details": {k: _num(v) if isinstance(v, (Fraction, np.integer)) else v for k, v in self.details.items()},
        }


def _result(name, g, instance, lhs, rhs, details=None, le=None) -> CheckResult:
    ok = (lhs <= rhs) if le is None else le
    return CheckResult(
        name=name,
        instance={"n": g.n, "m": g.num_edges, **instance},
        lhs=lhs,
        rhs=rhs,
        status=PASS if ok else FAIL,
        counterexample=None if ok else graph6.encode(g),
        details=details or {},
    )


def _na(name, g, instance, reason) -> CheckResult:
    return CheckResult(
        name=name,
        instance={"n": g.n, "m": g.num_edges, **instance},
        lhs=None,
        rhs=None,
        status=NA,
        details={"reason": reason},
    )


def _classes(g: Graph, classes) -> list[list[int]]:
    if isinstance(classes, VertexPartition):
        return classes.classes()
    out = [sorted(int(v) for v in c) for c in classes]
    seen = set()
    for c in out:
        for v in c:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} not in graph")
            if v in seen:
                raise ValueError(f"classes overlap at vertex {v}")
            seen.add(v)
    return out


def _require_free(g: Graph, length: int, what: str = "g") -> None:
    if contains_cycle_of_length(g, length):
        raise PreconditionError(f"{what} contains C{length}")


def _edges_between(g: Graph, xs_mask: int, ys_mask: int) -> int:
    rows = g.rows
    return sum((rows[x] & ys_mask).bit_count() for x in iter_bits(xs_mask))


# identities -------------------------------------------------------------

def check_random_partition_identity(g: Graph, k: int, budget: int = PARTITION_IDENTITY_BUDGET) -> list[CheckResult]:
    """Sum c(U_1..U_k) and p(U_1..U_k) over all k^n assignments of vertices
    to k classes; compare with #C_k * 2k * k^(n-k) and #P_(k-1) * 2 * k^(n-k).

    Returns the cycle result then the path result. Equality is required, so
    status is pass iff lhs == rhs.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    n = g.n
    if k**n > budget:
        raise ValueError(f"{k}^{n} assignments exceed the budget {budget}")
    total_c = total_p = 0
    for assign in product(range(k), repeat=n):
        a = np.asarray(assign, dtype=np.int32)
        total_c += kernels.partition_count(g, a, k, True)
        total_p += kernels.partition_count(g, a, k, False)
    scale = Fraction(k) ** (n - k)
    rhs_c = count_cycle_copies(g, k) * 2 * k * scale
    rhs_p = count_path_copies(g, k - 1) * 2 * scale
    inst = {"k": k}
    out = []
    for name, lhs, rhs in (("partition-identity-cycle", total_c, rhs_c), ("partition-identity-path", total_p, rhs_p)):
        r = _result(name, g, inst, Fraction(lhs), rhs, le=(lhs == rhs))
        out.append(r)
    return out


# consecutive odd cycles -------------------------------------------------

def check_cycle_partition_inequality(g: Graph, classes, k: int) -> CheckResult:
    """c(U_1..U_{2k+1}) <= sum over nonempty independent sets I of C_{2k+1}
    of prod_{i in I} |U_i|, for C_{2k+3}-free g."""
    if k < 1:
        raise ValueError("k must be positive")
    cl = _classes(g, classes)
    if len(cl) != 2 * k + 1:
        raise ValueError(f"need {2 * k + 1} classes, got {len(cl)}")
    _require_free(g, 2 * k + 3)
    sizes = [len(c) for c in cl]
    lhs = partition_cycle_count(g, cl)
    rhs = sum(prod(sizes[i - 1] for i in I) for I in odd_cycle_independent_sets(2 * k + 1))
    return _result("consecutive-odd", g, {"k": k, "sizes": sizes}, lhs, rhs)


def check_consecutive_odd_constant(n: int, value: int, k: int = 2) -> bool:
    """value <= (2k+1)^(2k) 2^(2k+1) n^k, the explicit constant for ex(n, C_{2k+1}, C_{2k+3})."""
    return value <= (2 * k + 1) ** (2 * k) * 2 ** (2 * k + 1) * n**k


# layered path bounds ----------------------------------------------------

def _lambda_hypotheses(g: Graph, masks, lam) -> str | None:
    rows = g.rows
    sizes = [m.bit_count() for m in masks]
    if _edges_between(g, masks[0], masks[1]) > lam * (sizes[0] + sizes[1]):
        return "e(U1,U2) too large"
    for i in range(len(masks) - 2):
        nxt, far = masks[i + 1], masks[i + 2]
        for u in iter_bits(masks[i]):
            nb = rows[u] & nxt
            if _edges_between(g, nb, far) > lam * (nb.bit_count() + sizes[i + 2]):
                return f"neighbourhood condition fails at class {i + 1}, vertex {u}"
    return None


def check_lambda_path_bound(g: Graph, classes, lam) -> CheckResult:
    """Layered path bound under the lambda-sparseness hypotheses.

    If e(U1,U2) <= lam(|U1|+|U2|) and every e(N_{U_{i+1}}(u), U_{i+2}) <=
    lam(|N|+|U_{i+2}|), then p(U1..Us) is at most
    lam^((s-1)/2) n^((s-3)/2) (|U1||Us| + lam n) for odd s and
    lam^(s/2) n^(s/2-1) (|U1|+|U2|) for even s. Instances failing the
    hypotheses are not-applicable.
    """
    lam = Fraction(lam)
    if lam < 1:
        raise ValueError("lambda must be at least 1")
    cl = _classes(g, classes)
    s = len(cl)
    if s < 2:
        raise ValueError("need at least two classes")
    masks = [vertex_mask(c) for c in cl]
    sizes = [len(c) for c in cl]
    inst = {"s": s, "lambda": _num(lam), "sizes": sizes}
    reason = _lambda_hypotheses(g, masks, lam)
    if reason is not None:
        return _na("lambda-path", g, inst, reason)
    n = g.n
    lhs = partition_path_count(g, cl)
    if s % 2:
        rhs = lam ** ((s - 1) // 2) * Fraction(n) ** ((s - 3) // 2) * (sizes[0] * sizes[-1] + lam * n)
    else:
        rhs = lam ** (s // 2) * Fraction(n) ** (s // 2 - 1) * (sizes[0] + sizes[1])
    return _result("lambda-path", g, inst, lhs, rhs)


def check_forbidden_cycles_main(g: Graph, classes, k: int, ell: int, mode: str = "even-free") -> CheckResult:
    """c(V_1..V_{2k+1}) <= ell^(k-1) n^(k-2) [p(V1,V2,V3,V4) + p(V_{2k+1},V1,V2,V3)].

    mode ``even-free``: g must be C_{2 ell}-free; ``odd-free``: g must be
    C_{2 ell+1}-free with ell > k.
    """
    if k < 2 or ell < 2:
        raise ValueError("need k >= 2 and ell >= 2")
    cl = _classes(g, classes)
    if len(cl) != 2 * k + 1:
        raise ValueError(f"need {2 * k + 1} classes, got {len(cl)}")
    if mode == "even-free":
        _require_free(g, 2 * ell)
    elif mode == "odd-free":
        if ell <= k:
            raise PreconditionError("odd-free mode needs ell > k")
        _require_free(g, 2 * ell + 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    lhs = partition_cycle_count(g, cl)
    p1 = partition_path_count(g, cl[:4])
    p2 = partition_path_count(g, [cl[-1]] + cl[:3])
    rhs = ell ** (k - 1) * g.n ** (k - 2) * (p1 + p2)
    return _result(
        "forbidden-cycles",
        g,
        {"k": k, "l": ell, "mode": mode, "sizes": [len(c) for c in cl]},
        lhs,
        rhs,
        details={"p_first": p1, "p_wrap": p2},
    )


# even-cycle-free degree and triangle bounds -----------------------------

def check_p2_bound(g: Graph, ell: int) -> CheckResult:
    """Every vertex of a C_{2 ell}-free graph ends at most 4(ell-1)n paths of length 2."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    _require_free(g, 2 * ell)
    counts = [count_paths_from(g, v, 2) for v in range(g.n)]
    lhs = max(counts, default=0)
    arg = int(np.argmax(counts)) if counts else None
    return _result("p2", g, {"l": ell}, lhs, 4 * (ell - 1) * g.n, details={"argmax": arg})


def check_triangle_bound(g: Graph, ell: int) -> CheckResult:
    """#C3 <= (2 ell - 3)/3 * e(g) for C_{2 ell}-free g."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    _require_free(g, 2 * ell)
    return _result("triangle", g, {"l": ell}, Fraction(count_cycle_copies(g, 3)), Fraction(2 * ell - 3, 3) * g.num_edges)


def find_path(g: Graph, t: int):
    """A path with t edges as a vertex list, or None (exhaustive search)."""
    if t < 0:
        raise ValueError("path length must be nonnegative")
    if t >= g.n:
        return None
    rows = g.rows
    path = []

    def rec(v, visited, rem):
        path.append(v)
        if rem == 0:
            return True
        for w in iter_bits(rows[v] & ~visited):
            if rec(w, visited | (1 << w), rem - 1):
                return True
        path.pop()
        return False

    # low-degree starts first: long paths are found from path ends quickly
    for s in sorted(range(g.n), key=lambda v: g.rows[v].bit_count()):
        if rows[s] or t == 0:
            if rec(s, 1 << s, t):
                return path
    return None


def check_erdos_gallai(g: Graph, t: int) -> CheckResult:
    """If 2e(g) > (t-1)n then g contains a path with t edges.

    lhs is e(g) when g has no such path (0 once a witness path is found),
    rhs is (t-1)n/2; the witness is reported in details.
    """
    if t < 1:
        raise ValueError("t must be positive")
    e = g.num_edges
    rhs = Fraction((t - 1) * g.n, 2)
    inst = {"t": t}
    if e <= rhs:
        return _result("erdos-gallai", g, inst, e, rhs, details={"vacuous": True})
    witness = find_path(g, t)
    lhs = 0 if witness is not None else e
    return _result("erdos-gallai", g, inst, lhs, rhs, details={"vacuous": False, "edges": e, "witness": witness})


def _zarankiewicz_ok(e: int, n: int, m: int, ell: int) -> bool:
    x = Fraction(e, 2 * ell - 3) - 2 * n
    if x <= 0:
        return True
    if ell % 2:
        return x ** (2 * ell) <= Fraction(n * m) ** (ell + 1)
    return x ** (2 * ell) <= Fraction(n) ** ell * Fraction(m) ** (ell + 2)


def check_zarankiewicz(bip: BipartiteGraph, ell: int) -> CheckResult:
    """C_{2 ell}-free bipartite graph with sides n >= m has at most
    (2ell-3)((nm)^(1/2+1/(2ell)) + 2n) edges for odd ell and
    (2ell-3)(n^(1/2) m^(1/2+1/ell) + 2n) for even ell.

    Sides are ordered automatically. The decision is exact; ``rhs`` is the
    floating-point value of the bound for reporting.
    """
    if ell < 2:
        raise ValueError("ell must be at least 2")
    g = bip.to_graph()
    _require_free(g, 2 * ell, "bipartite graph")
    n, m = max(bip.a, bip.b), min(bip.a, bip.b)
    e = bip.num_edges
    if ell % 2:
        rhs = (2 * ell - 3) * ((n * m) ** (0.5 + 1 / (2 * ell)) + 2 * n)
    else:
        rhs = (2 * ell - 3) * (n**0.5 * m ** (0.5 + 1 / ell) + 2 * n)
    ok = _zarankiewicz_ok(e, n, m, ell)
    return _result("zarankiewicz", g, {"l": ell, "sides": [n, m]}, e, rhs, le=ok)


# trimming ---------------------------------------------------------------

def _high(count: int, ell: int, n: int) -> bool:
    """count >= ell * n^(2/(ell+2)) (even ell) or ell * n^(2/(ell+1)) (odd ell), exactly."""
    e = ell + 2 if ell % 2 == 0 else ell + 1
    return count**e >= ell**e * n * n


def find_trimming_sets(g: Graph, X, Y, Z, W, ell: int, slack=64):
    """Degree-threshold sets Y' and Z' and the check of their guarantees.

    Y' holds the y in Y with many X-neighbours, Z' the z in Z with many
    W-neighbours. The check passes iff e(Y',X), e(Y',Z), e(Z',Y), e(Z',W)
    are at most slack*ell*n and p(X, Y-Y', Z-Z', W) is at most
    slack*ell^2*n^2. lhs is the largest of these quantities divided by
    its scale (ell*n or ell^2*n^2) and rhs is ``slack``.
    """
    if ell < 3:
        raise ValueError("ell must be at least 3")
    sets = _classes(g, [X, Y, Z, W])
    X, Y, Z, W = sets
    xm, ym, zm, wm = (vertex_mask(s) for s in sets)
    for (a, am), (b, bm), label in (((X, xm), (Y, ym), "(X,Y)"), ((Y, ym), (Z, zm), "(Y,Z)"), ((Z, zm), (W, wm), "(Z,W)")):
        layer = _layer(g, a, am, b, bm)
        if contains_cycle_of_length(layer, 2 * ell):
            raise PreconditionError(f"bipartite graph {label} contains C{2 * ell}")
    n = g.n
    rows = g.rows
    y_prime = [y for y in Y if _high((rows[y] & xm).bit_count(), ell, n)]
    z_prime = [z for z in Z if _high((rows[z] & wm).bit_count(), ell, n)]
    ypm, zpm = vertex_mask(y_prime), vertex_mask(z_prime)
    counts = {
        "e(Y',X)": _edges_between(g, ypm, xm),
        "e(Y',Z)": _edges_between(g, ypm, zm),
        "e(Z',Y)": _edges_between(g, zpm, ym),
        "e(Z',W)": _edges_between(g, zpm, wm),
    }
    rest_y = [y for y in Y if not (ypm >> y) & 1]
    rest_z = [z for z in Z if not (zpm >> z) & 1]
    p = partition_path_count(g, [X, rest_y, rest_z, W]) if all((X, rest_y, rest_z, W)) else 0
    p_full = partition_path_count(g, [X, Y, Z, W]) if all(sets) else 0
    slack = Fraction(slack)
    if n == 0:
        lhs = Fraction(0)
    else:
        lhs = max([Fraction(c, ell * n) for c in counts.values()] + [Fraction(p, ell * ell * n * n)])
    res = _result(
        "trimming",
        g,
        {"l": ell, "sizes": [len(s) for s in sets]},
        lhs,
        slack,
        details={**counts, "p_trimmed": p, "p_untrimmed": p_full, "|Y'|": len(y_prime), "|Z'|": len(z_prime)},
    )
    return y_prime, z_prime, res


def _layer(g: Graph, a, am, b, bm) -> Graph:
    """The bipartite graph of g between vertex sets a and b (on all of V(g))."""
    rows = [0] * g.n
    for x in a:
        rows[x] = g.rows[x] & bm
    for y in b:
        rows[y] = g.rows[y] & am
    return Graph(g.n, rows, check=False)
