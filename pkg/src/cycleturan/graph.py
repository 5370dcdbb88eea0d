"""Graph substrate: immutable simple graphs stored as per-vertex bit rows.

Row ``v`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge.
Dense numpy views (boolean matrix, packed uint64 words, CSR arrays) are
derived lazily and cached, since the compiled kernels consume those.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "BipartiteGraph",
    "VertexPartition",
    "iter_bits",
    "vertex_mask",
    "blow_up",
    "induced_subgraph",
    "sample_vertices",
    "sample_induced",
    "random_partition",
    "odd_cycle_independent_sets",
    "extend_independent_set_on_odd_cycle",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << int(v)
    return m


def _pack_rows(mat: np.ndarray) -> tuple:
    """Boolean n x n matrix -> tuple of int bit rows."""
    n = mat.shape[0]
    if n == 0:
        return ()
    packed = np.packbits(mat.astype(bool, copy=False), axis=1, bitorder="little")
    return tuple(int.from_bytes(r.tobytes(), "little") for r in packed)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; build them with :meth:`from_edges`,
    :meth:`from_matrix` or one of the named constructors.
    """

    __slots__ = ("n", "rows", "_cache")

    def __init__(self, n: int, rows: Sequence[int] | None = None, check: bool = True):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if rows is None:
            rows = (0,) * n
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        if check:
            full = (1 << n) - 1
            for v, r in enumerate(rows):
                if r < 0 or r & ~full:
                    raise ValueError(f"row {v} references a vertex outside 0..{n - 1}")
                if (r >> v) & 1:
                    raise ValueError(f"loop at vertex {v}")
                for u in iter_bits(r):
                    if not (rows[u] >> v) & 1:
                        raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        self.n = n
        self.rows = rows
        self._cache = {}

    # construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def from_matrix(cls, mat) -> "Graph":
        a = np.asarray(mat, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any():
            raise ValueError("adjacency matrix has loops")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix is not symmetric")
        g = cls(a.shape[0], _pack_rows(a), check=False)
        g._cache["matrix"] = a.copy()
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)], check=False)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        """The cycle C_n on vertices 0..n-1 (n >= 3)."""
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, k: int) -> "Graph":
        """The path P_k with k edges (k + 1 vertices)."""
        if k < 0:
            raise ValueError("path length must be nonnegative")
        return cls.from_edges(k + 1, [(i, i + 1) for i in range(k)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """K_{1,leaves} with the centre at vertex 0."""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    # basic queries ----------------------------------------------------

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __len__(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        m = self._cache.get("m")
        if m is None:
            m = sum(r.bit_count() for r in self.rows) // 2
            self._cache["m"] = m
        return m

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> np.ndarray:
        return np.array([r.bit_count() for r in self.rows], dtype=np.int64)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, r in enumerate(self.rows):
            out.extend((u, v) for v in iter_bits(r >> (u + 1) << (u + 1)))
        return out

    def edges_between(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        """e(X, Y): edges with one end in X and the other in Y (X, Y disjoint)."""
        ym = vertex_mask(ys)
        return sum((self.rows[x] & ym).bit_count() for x in xs)

    def neighbors_in(self, v: int, xs: Iterable[int]) -> list[int]:
        """N_X(v) as a sorted list."""
        return list(iter_bits(self.rows[v] & vertex_mask(xs)))

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows, check=False)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        rows = list(self.rows) + [r << shift for r in other.rows]
        return Graph(self.n + other.n, rows, check=False)

    # cached array views ----------------------------------------------

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix (read-only view, cached)."""
        a = self._cache.get("matrix")
        if a is None:
            w = self.words()
            if self.n:
                bits = np.unpackbits(w.view(np.uint8), axis=1, bitorder="little")
                a = bits[:, : self.n].astype(bool)
            else:
                a = np.zeros((0, 0), dtype=bool)
            self._cache["matrix"] = a
        a = a.view()
        a.flags.writeable = False
        return a

    def words(self) -> np.ndarray:
        """Rows packed into a C-contiguous ``(n, W)`` uint64 array, W = ceil(n/64)."""
        w = self._cache.get("words")
        if w is None:
            nw = max(1, (self.n + 63) // 64)
            if "matrix" in self._cache and self.n:
                packed = np.packbits(self._cache["matrix"], axis=1, bitorder="little")
                buf = np.zeros((self.n, nw * 8), dtype=np.uint8)
                buf[:, : packed.shape[1]] = packed
                w = np.ascontiguousarray(buf).view("<u8").astype(np.uint64)
            else:
                nbytes = nw * 8
                data = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
                w = np.frombuffer(data, dtype="<u8").astype(np.uint64).reshape(self.n, nw)
            w = np.ascontiguousarray(w)
            w.flags.writeable = False
            self._cache["words"] = w
        return w

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) int32 arrays with sorted neighbour lists."""
        c = self._cache.get("csr")
        if c is None:
            a = self.adjacency_matrix()
            if self.n:
                deg = a.sum(axis=1)
                indptr = np.zeros(self.n + 1, dtype=np.int32)
                np.cumsum(deg, out=indptr[1:])
                indices = np.nonzero(a)[1].astype(np.int32)
            else:
                indptr = np.zeros(1, dtype=np.int32)
                indices = np.zeros(0, dtype=np.int32)
            indptr.flags.writeable = False
            indices.flags.writeable = False
            c = (indptr, indices)
            self._cache["csr"] = c
        return c


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with sides A = 0..a-1 and B = 0..b-1.

    ``rows_a[i]`` is the bit set of B-neighbours of A-vertex ``i``.
    """

    a: int
    b: int
    rows_a: tuple

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("side sizes must be nonnegative")
        if len(self.rows_a) != self.a:
            raise ValueError("need one row per A-vertex")
        full = (1 << self.b) - 1
        for r in self.rows_a:
            if r < 0 or r & ~full:
                raise ValueError("cross edge points outside side B")

    @classmethod
    def from_edges(cls, a: int, b: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows = [0] * a
        for i, j in edges:
            if not (0 <= i < a and 0 <= j < b):
                raise ValueError(f"cross edge ({i}, {j}) out of range")
            rows[i] |= 1 << j
        return cls(a, b, tuple(rows))

    @classmethod
    def from_graph(cls, g: Graph, a: int) -> "BipartiteGraph":
        """Read back a graph whose first ``a`` vertices form side A."""
        amask = (1 << a) - 1
        for v in range(g.n):
            side = amask if v < a else ~amask
            if g.rows[v] & side:
                raise ValueError(f"vertex {v} has a neighbour on its own side")
        return cls(a, g.n - a, tuple(g.rows[i] >> a for i in range(a)))

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows_a)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows_a) for j in iter_bits(r)]

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.a + self.b, [(i, self.a + j) for i, j in self.edges()])

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph.from_edges(self.b, self.a, [(j, i) for i, j in self.edges()])


class VertexPartition:
    """Ordered classes U_0..U_{s-1} covering every vertex of ``graph``.

    Classes may be empty; their order matters for class-ordered paths and
    cycles.
    """

    __slots__ = ("graph", "assignment", "s")

    def __init__(self, graph: Graph, assignment: Sequence[int], s: int):
        assignment = tuple(int(c) for c in assignment)
        if s < 1:
            raise ValueError("need at least one class")
        if len(assignment) != graph.n:
            raise ValueError("assignment length must equal the vertex count")
        if any(c < 0 or c >= s for c in assignment):
            raise ValueError(f"class index outside 0..{s - 1}")
        self.graph = graph
        self.assignment = assignment
        self.s = int(s)

    @classmethod
    def from_classes(cls, graph: Graph, classes: Sequence[Iterable[int]]) -> "VertexPartition":
        assign = [-1] * graph.n
        for i, cl in enumerate(classes):
            for v in cl:
                if not 0 <= v < graph.n:
                    raise ValueError(f"vertex {v} out of range")
                if assign[v] != -1:
                    raise ValueError(f"vertex {v} appears in two classes")
                assign[v] = i
        if -1 in assign:
            raise ValueError(f"vertex {assign.index(-1)} is in no class")
        return cls(graph, assign, len(classes))

    def classes(self) -> list[list[int]]:
        out = [[] for _ in range(self.s)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def masks(self) -> list[int]:
        out = [0] * self.s
        for v, c in enumerate(self.assignment):
            out[c] |= 1 << v
        return out

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes()]

    def __repr__(self) -> str:
        return f"VertexPartition(s={self.s}, sizes={self.sizes()})"


def blow_up(base: Graph, sizes: Sequence[int]) -> tuple[Graph, VertexPartition]:
    """Replace base vertex i by an independent class of ``sizes[i]`` vertices.

    Classes are consecutive vertex ranges in base-vertex order.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) != base.n:
        raise ValueError(f"need {base.n} class sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("class sizes must be positive")
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    cmask = [((1 << sizes[i]) - 1) << int(offsets[i]) for i in range(base.n)]
    rows, assign = [], []
    for i in range(base.n):
        r = 0
        for j in iter_bits(base.rows[i]):
            r |= cmask[j]
        rows.extend([r] * sizes[i])
        assign.extend([i] * sizes[i])
    g = Graph(int(offsets[-1]), rows, check=False)
    return g, VertexPartition(g, assign, max(base.n, 1))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """G[S] relabelled by the order-preserving map S -> 0..|S|-1."""
    vs = sorted({int(v) for v in vertices})
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise ValueError("vertex out of range")
    if len(vs) == g.n:
        return g
    if g.n > 64 and len(vs) > 16:
        idx = np.asarray(vs, dtype=np.intp)
        return Graph.from_matrix(g.adjacency_matrix()[np.ix_(idx, idx)])
    pos = {v: i for i, v in enumerate(vs)}
    smask = vertex_mask(vs)
    rows = []
    for v in vs:
        r = 0
        for u in iter_bits(g.rows[v] & smask):
            r |= 1 << pos[u]
        rows.append(r)
    return Graph(len(vs), rows, check=False)


def sample_vertices(n: int, q: int, rng: np.random.Generator) -> np.ndarray:
    """A uniformly random q-subset of 0..n-1, sorted."""
    if not 0 <= q <= n:
        raise ValueError(f"sample size {q} outside 0..{n}")
    return np.sort(rng.choice(n, size=q, replace=False))


def sample_induced(g: Graph, q: int, rng: np.random.Generator) -> Graph:
    """Induced subgraph on a uniformly random q-subset of the vertices."""
    return induced_subgraph(g, sample_vertices(g.n, q, rng).tolist())


def random_partition(g: Graph, s: int, rng: np.random.Generator) -> VertexPartition:
    """Assign every vertex independently and uniformly to one of s classes."""
    if s < 1:
        raise ValueError("need at least one class")
    return VertexPartition(g, rng.integers(0, s, size=g.n).tolist(), s)


# independent sets of odd cycles (1-based labels 1..2k+1) ---------------

def _check_odd_cycle_set(k: int, J: Iterable[int]) -> list[int]:
    if k < 2:
        raise ValueError("k must be at least 2")
    m = 2 * k + 1
    js = sorted({int(j) for j in J})
    if not js:
        raise ValueError("J must be nonempty")
    if js[0] < 1 or js[-1] > m:
        raise ValueError(f"labels must lie in 1..{m}")
    for a, b in zip(js, js[1:] + [js[0] + m]):
        if b - a == 1:
            raise ValueError(f"J is not independent in C_{m}: {a} and {(b - 1) % m + 1} adjacent")
    return js


def odd_cycle_independent_sets(m: int) -> list[tuple[int, ...]]:
    """All nonempty independent sets of the cycle on labels 1..m."""
    out = []
    for size in range(1, m // 2 + 1):
        for c in combinations(range(1, m + 1), size):
            if all(b - a >= 2 for a, b in zip(c, c[1:])) and not (c[0] == 1 and c[-1] == m and size > 1):
                out.append(c)
    return out


def extend_independent_set_on_odd_cycle(k: int, J: Iterable[int]) -> tuple[int, ...]:
    """Extend an independent set J of C_{2k+1} (labels 1..2k+1) to I.

    In I, cyclically consecutive elements are 2 or 3 apart and each gap of
    3 has an endpoint in J.  Construction: walk forward from every element
    of J in steps of 2 and stop just before reaching the next element of J
    (or the element right before it).  A singleton J = {j} yields
    j, j+2, ..., j+2k-2.
    """
    js = _check_odd_cycle_set(k, J)
    m = 2 * k + 1
    out = set(js)
    for i, j in enumerate(js):
        nxt = js[(i + 1) % len(js)]
        if len(js) == 1 or nxt <= j:
            nxt += m
        x = j + 2
        while x < nxt - 1:
            out.add((x - 1) % m + 1)
            x += 2
    return tuple(sorted(out))
