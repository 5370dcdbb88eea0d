# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same contracts as ``_pure``; inputs are numpy arrays."""

import numpy as np

from libc.stdint cimport uint64_t, uint32_t, int64_t, int32_t, int8_t, uint8_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


# ---------------------------------------------------------------------------
# cycle / path counting on general graphs (CSR + packed words)

cdef struct Ctx:
    const uint64_t* words
    const int32_t* indptr
    const int32_t* indices
    int n
    int W
    int k
    int s
    int v1
    uint64_t* vis
    uint8_t* visb
    int32_t* dist


cdef inline void _mark(Ctx* c, int v) noexcept nogil:
    c.vis[v >> 6] |= (<uint64_t>1) << (v & 63)
    c.visb[v] = 1


cdef inline void _unmark(Ctx* c, int v) noexcept nogil:
    c.vis[v >> 6] &= ~((<uint64_t>1) << (v & 63))
    c.visb[v] = 0


cdef int64_t _close_count(Ctx* c, int v, int lo) noexcept nogil:
    """|N(v) & N(s) & {w > lo} & ~visited|."""
    cdef int64_t cnt = 0
    cdef int j = (lo + 1) >> 6
    cdef uint64_t x
    cdef const uint64_t* rv = c.words + <int64_t>v * c.W
    cdef const uint64_t* rs = c.words + <int64_t>c.s * c.W
    cdef int first = j
    while j < c.W:
        x = rv[j] & rs[j] & ~c.vis[j]
        if j == first:
            x &= ~(((<uint64_t>1) << ((lo + 1) & 63)) - 1)
        cnt += popcount64(x)
        j += 1
    return cnt


cdef int64_t _cyc_rec(Ctx* c, int v, int depth) noexcept nogil:
    if depth == c.k - 2:
        return _close_count(c, v, c.v1)
    cdef int64_t cnt = 0
    cdef int idx, w
    for idx in range(c.indptr[v], c.indptr[v + 1]):
        w = c.indices[idx]
        if w <= c.s or c.visb[w]:
            continue
        _mark(c, w)
        cnt += _cyc_rec(c, w, depth + 1)
        _unmark(c, w)
    return cnt


def count_cycles(const uint64_t[:, ::1] words, const int32_t[::1] indptr,
                 const int32_t[::1] indices, int n, int k):
    if n < 3 or k < 3:
        return 0
    cdef Ctx c
    c.words = &words[0, 0]
    c.indptr = &indptr[0]
    c.indices = &indices[0] if indices.shape[0] else NULL
    c.n = n
    c.W = words.shape[1]
    c.k = k
    c.vis = <uint64_t*>calloc(c.W, sizeof(uint64_t))
    c.visb = <uint8_t*>calloc(n, 1)
    cdef int64_t total = 0
    cdef int s, idx
    try:
        with nogil:
            for s in range(n):
                c.s = s
                _mark(&c, s)
                for idx in range(c.indptr[s], c.indptr[s + 1]):
                    c.v1 = c.indices[idx]
                    if c.v1 <= s:
                        continue
                    _mark(&c, c.v1)
                    total += _cyc_rec(&c, c.v1, 1)
                    _unmark(&c, c.v1)
                _unmark(&c, s)
    finally:
        free(c.vis)
        free(c.visb)
    return total


cdef int64_t _path_rec(Ctx* c, int v, int rem) noexcept nogil:
    cdef int64_t cnt = 0
    cdef int idx, w, j
    cdef const uint64_t* rv
    if rem == 1:
        rv = c.words + <int64_t>v * c.W
        for j in range(c.W):
            cnt += popcount64(rv[j] & ~c.vis[j])
        return cnt
    for idx in range(c.indptr[v], c.indptr[v + 1]):
        w = c.indices[idx]
        if c.visb[w]:
            continue
        _mark(c, w)
        cnt += _path_rec(c, w, rem - 1)
        _unmark(c, w)
    return cnt


def count_paths(const uint64_t[:, ::1] words, const int32_t[::1] indptr,
                const int32_t[::1] indices, int n, int k, int start=-1):
    if n == 0:
        return 0
    if k == 0:
        return n if start < 0 else 1
    cdef Ctx c
    c.words = &words[0, 0]
    c.indptr = &indptr[0]
    c.indices = &indices[0] if indices.shape[0] else NULL
    c.n = n
    c.W = words.shape[1]
    c.vis = <uint64_t*>calloc(c.W, sizeof(uint64_t))
    c.visb = <uint8_t*>calloc(n, 1)
    cdef int64_t total = 0
    cdef int s, lo = 0, hi = n
    if start >= 0:
        lo = start
        hi = start + 1
    try:
        with nogil:
            for s in range(lo, hi):
                _mark(&c, s)
                total += _path_rec(&c, s, k)
                _unmark(&c, s)
    finally:
        free(c.vis)
        free(c.visb)
    return total


cdef bint _hc_rec(Ctx* c, int v, int depth) noexcept nogil:
    cdef int idx, w, need
    if depth == c.k - 2:
        return _close_count(c, v, c.s) > 0
    need = c.k - depth - 1
    for idx in range(c.indptr[v], c.indptr[v + 1]):
        w = c.indices[idx]
        if w <= c.s or c.visb[w] or c.dist[w] < 0 or c.dist[w] > need:
            continue
        _mark(c, w)
        if _hc_rec(c, w, depth + 1):
            _unmark(c, w)
            return True
        _unmark(c, w)
    return False


cdef bint _has_triangle(Ctx* c) noexcept nogil:
    cdef int v, idx, u, j
    cdef const uint64_t* rv
    cdef const uint64_t* ru
    for v in range(c.n):
        rv = c.words + <int64_t>v * c.W
        for idx in range(c.indptr[v], c.indptr[v + 1]):
            u = c.indices[idx]
            if u <= v:
                continue
            ru = c.words + <int64_t>u * c.W
            for j in range(c.W):
                if rv[j] & ru[j]:
                    return True
    return False


def has_cycle(const uint64_t[:, ::1] words, const int32_t[::1] indptr,
              const int32_t[::1] indices, int n, int length):
    if length < 3 or length > n:
        return False
    cdef Ctx c
    cdef bint found = False
    cdef int32_t* queue
    cdef int s, head, tail, x, idx, w
    c.words = &words[0, 0]
    c.indptr = &indptr[0]
    c.indices = &indices[0] if indices.shape[0] else NULL
    c.n = n
    c.W = words.shape[1]
    c.k = length
    if length == 3:
        with nogil:
            found = _has_triangle(&c)
        return bool(found)
    c.vis = <uint64_t*>calloc(c.W, sizeof(uint64_t))
    c.visb = <uint8_t*>calloc(n, 1)
    c.dist = <int32_t*>malloc(n * sizeof(int32_t))
    queue = <int32_t*>malloc(n * sizeof(int32_t))
    try:
        with nogil:
            for s in range(n):
                if c.indptr[s + 1] - c.indptr[s] < 2:
                    continue
                c.s = s
                for x in range(n):
                    c.dist[x] = -1
                c.dist[s] = 0
                queue[0] = s
                head = 0
                tail = 1
                while head < tail:
                    x = queue[head]
                    head += 1
                    for idx in range(c.indptr[x], c.indptr[x + 1]):
                        w = c.indices[idx]
                        if w > s and c.dist[w] < 0:
                            c.dist[w] = c.dist[x] + 1
                            queue[tail] = w
                            tail += 1
                _mark(&c, s)
                found = _hc_rec(&c, s, 0)
                _unmark(&c, s)
                if found:
                    break
    finally:
        free(c.vis)
        free(c.visb)
        free(c.dist)
        free(queue)
    return bool(found)


# ---------------------------------------------------------------------------
# partition-restricted path / cycle counts (dense uint8 adjacency)

def partition_count(const uint8_t[:, ::1] adj, const int32_t[::1] assign, int s, bint closed):
    """p or c over classes 0..s-1 using int64 layered DP (caller checks overflow)."""
    cdef int n = assign.shape[0]
    cdef int i, v, w, a, b, u
    members = [[] for _ in range(s)]
    for v in range(n):
        if assign[v] >= 0:
            members[assign[v]].append(v)
    for i in range(s):
        if not members[i]:
            return 0
    cdef int32_t[::1] order = np.array([v for i in range(s) for v in members[i]], dtype=np.int32)
    cdef int32_t[::1] start = np.cumsum([0] + [len(m) for m in members], dtype=np.int32).astype(np.int32)
    cdef int64_t[::1] f = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] g = np.zeros(n, dtype=np.int64)
    cdef int64_t total = 0, acc
    cdef int u_lo = start[0], u_hi = start[1]
    cdef int rounds = (u_hi - u_lo) if closed else 1
    cdef int r
    with nogil:
        for r in range(rounds):
            for a in range(start[0], start[1]):
                f[order[a]] = 0 if closed else 1
            if closed:
                u = order[u_lo + r]
                f[u] = 1
            for i in range(1, s):
                for b in range(start[i], start[i + 1]):
                    w = order[b]
                    acc = 0
                    for a in range(start[i - 1], start[i]):
                        v = order[a]
                        if f[v] and adj[v, w]:
                            acc += f[v]
                    g[w] = acc
                for b in range(start[i], start[i + 1]):
                    f[order[b]] = g[order[b]]
            if closed:
                for b in range(start[s - 1], start[s]):
                    w = order[b]
                    if adj[u, w]:
                        total += f[w]
            else:
                for b in range(start[s - 1], start[s]):
                    total += f[order[b]]
    return total


# ---------------------------------------------------------------------------
# max cut

def maxcut_exact(const uint64_t[:, ::1] words, int n):
    """Gray-code enumeration of the 2^(n-1) cuts with vertex n-1 fixed; n <= 63."""
    if n <= 1:
        return 0, 0
    if n > 63:
        raise ValueError("exact max cut supports at most 63 vertices")
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t S = 0, best_S = 0, r, bit
    cdef int64_t cut = 0, best = 0
    cdef uint64_t i, limit = (<uint64_t>1) << (n - 1)
    cdef int v
    cdef uint64_t* rows = <uint64_t*>malloc(n * sizeof(uint64_t))
    for v in range(n):
        rows[v] = words[v, 0]
    with nogil:
        i = 1
        while i < limit:
            v = ctz64(i)
            r = rows[v]
            bit = (<uint64_t>1) << v
            if S & bit:
                cut += popcount64(r & S) - popcount64(r & ~S & full)
            else:
                cut += popcount64(r & ~S & full) - popcount64(r & S)
            S ^= bit
            if cut > best:
                best = cut
                best_S = S
            i += 1
    free(rows)
    return int(best), int(best_S)


def maxcut_local(const int32_t[::1] indptr, const int32_t[::1] indices, int8_t[::1] side):
    """Best-improvement single flips; lowest index wins ties. Updates ``side``."""
    cdef int n = side.shape[0]
    if n == 0:
        return 0
    cdef int64_t[::1] h = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] s = np.zeros(n, dtype=np.int64)
    cdef int v, idx, u, best_v
    cdef int64_t best_gain, gv, total = 0, m2 = 0
    with nogil:
        for v in range(n):
            s[v] = 2 * side[v] - 1
        for v in range(n):
            for idx in range(indptr[v], indptr[v + 1]):
                h[v] += s[indices[idx]]
        while True:
            best_v = -1
            best_gain = 0
            for v in range(n):
                gv = s[v] * h[v]
                if gv > best_gain:
                    best_gain = gv
                    best_v = v
            if best_v < 0:
                break
            s[best_v] = -s[best_v]
            for idx in range(indptr[best_v], indptr[best_v + 1]):
                h[indices[idx]] += 2 * s[best_v]
        for v in range(n):
            side[v] = 1 if s[v] > 0 else 0
            total += s[v] * h[v]
            m2 += indptr[v + 1] - indptr[v]
    return int((m2 - total) // 4)


# ---------------------------------------------------------------------------
# small graphs (n <= 32) as uint32 rows: freeness tests and brute-force search

cdef bint _pe_rec(const uint32_t* rows, int x, uint32_t visited, int target, int rem) noexcept nogil:
    cdef uint32_t cand
    cdef int w
    if rem == 1:
        return (rows[x] >> target) & 1
    cand = rows[x] & ~visited
    if rem == 2:
        while cand:
            w = ctz64(cand)
            cand &= cand - 1
            if (rows[w] >> target) & 1:
                return True
        return False
    while cand:
        w = ctz64(cand)
        cand &= cand - 1
        if _pe_rec(rows, w, visited | ((<uint32_t>1) << w), target, rem - 1):
            return True
    return False


cdef inline bint _path_exists(const uint32_t* rows, int u, int v, int length) noexcept nogil:
    if length == 1:
        return (rows[u] >> v) & 1
    return _pe_rec(rows, u, ((<uint32_t>1) << u) | ((<uint32_t>1) << v), v, length)


cdef inline bint _closes(const uint32_t* rows, int u, int v, const int* lens, int nl) noexcept nogil:
    cdef int i
    for i in range(nl):
        if _path_exists(rows, u, v, lens[i] - 1):
            return True
    return False



def closes_cycle(rows_in, int u, int v, lengths):
    """Whether adding uv to the small graph ``rows_in`` creates a cycle of a listed length."""
    cdef int n = len(rows_in)
    if n > 32:
        raise ValueError("small-graph kernels support at most 32 vertices")
    cdef uint32_t rows[32]
    cdef int lens[64]
    cdef int nl = 0, i
    for i in range(n):
        rows[i] = rows_in[i]
    for L in lengths:
        if nl < 64:
            lens[nl] = L
            nl += 1
    return bool(_closes(rows, u, v, lens, nl))


def path_exists(rows_in, int u, int v, int length):
    cdef int n = len(rows_in)
    if n > 32:
        raise ValueError("small-graph kernels support at most 32 vertices")
    cdef uint32_t rows[32]
    cdef int i
    for i in range(n):
        rows[i] = rows_in[i]
    return bool(_path_exists(rows, u, v, length))


cdef int64_t _small_cyc_rec(const uint32_t* rows, int v, uint32_t visited, int depth,
                            int k, uint32_t above_s, uint32_t close) noexcept nogil:
    cdef uint32_t cand
    cdef int w
    cdef int64_t cnt = 0
    if depth == k - 2:
        return popcount64(rows[v] & close & ~visited)
    cand = rows[v] & above_s & ~visited
    while cand:
        w = ctz64(cand)
        cand &= cand - 1
        cnt += _small_cyc_rec(rows, w, visited | ((<uint32_t>1) << w), depth + 1, k, above_s, close)
    return cnt


cdef int64_t _small_cycles(const uint32_t* rows, int n, int k) noexcept nogil:
    cdef int64_t total = 0
    cdef int s, v1
    cdef uint32_t above_s, ns, rest, close
    if k > n:
        return 0
    for s in range(n):
        above_s = ~((((<uint32_t>2) << s)) - 1) if s < 31 else 0
        ns = rows[s] & above_s
        rest = ns
        while rest:
            v1 = ctz64(rest)
            rest &= rest - 1
            close = ns & (~((((<uint32_t>2) << v1)) - 1) if v1 < 31 else 0)
            if close:
                total += _small_cyc_rec(rows, v1, ((<uint32_t>1) << s) | ((<uint32_t>1) << v1),
                                        1, k, above_s, close)
    return total


cdef int64_t _small_path_rec(const uint32_t* rows, int v, uint32_t visited, int rem) noexcept nogil:
    cdef uint32_t cand = rows[v] & ~visited
    cdef int w
    cdef int64_t cnt = 0
    if rem == 1:
        return popcount64(cand)
    while cand:
        w = ctz64(cand)
        cand &= cand - 1
        cnt += _small_path_rec(rows, w, visited | ((<uint32_t>1) << w), rem - 1)
    return cnt


cdef int64_t _small_target(const uint32_t* rows, int n, int kind, int k) noexcept nogil:
    cdef int64_t t = 0
    cdef int s
    if kind == 0:
        return _small_cycles(rows, n, k)
    if k == 0:
        return n
    for s in range(n):
        t += _small_path_rec(rows, s, (<uint32_t>1) << s, k)
    return t // 2


def count_target(rows_in, int n, int kind, int k):
    cdef uint32_t rows[32]
    cdef int i
    if n > 32:
        raise ValueError("small-graph kernels support at most 32 vertices")
    for i in range(n):
        rows[i] = rows_in[i]
    return _small_target(rows, n, kind, k)


cdef struct Search:
    int n
    int E
    int kind
    int k
    int nl
    int lens[16]
    int eu[512]
    int ev[512]
    uint32_t rows[32]
    uint32_t* suffix      # (E + 1) x n
    uint32_t h[32]
    int64_t best
    uint32_t witness[32]
    int64_t nodes
    int64_t leaves
    bint prune


cdef void _search(Search* S, int i) noexcept nogil:
    cdef int u, v, x
    cdef int64_t val
    cdef bint blocked
    S.nodes += 1
    if i == S.E:
        S.leaves += 1
        val = _small_target(S.rows, S.n, S.kind, S.k)
        if val > S.best:
            S.best = val
            for x in range(S.n):
                S.witness[x] = S.rows[x]
        return
    u = S.eu[i]
    v = S.ev[i]
    blocked = _closes(S.rows, u, v, S.lens, S.nl)
    if not blocked:
        S.rows[u] |= (<uint32_t>1) << v
        S.rows[v] |= (<uint32_t>1) << u
        _search(S, i + 1)
        S.rows[u] ^= (<uint32_t>1) << v
        S.rows[v] ^= (<uint32_t>1) << u
        if S.prune:
            for x in range(S.n):
                S.h[x] = S.rows[x] | S.suffix[(i + 1) * S.n + x]
            if not _closes(S.h, u, v, S.lens, S.nl):
                return
    _search(S, i + 1)


def ex_search(int n, int kind, int k, forbidden, bint prune_exclusions=True):
    """Compiled twin of ``_pure.ex_search`` (n <= 32)."""
    if n > 32:
        raise ValueError("exhaustive search supports at most 32 vertices")
    lens = sorted({int(L) for L in forbidden if 3 <= L <= n})
    cdef int x, i, u, v
    if not lens:
        full = [((1 << n) - 1) ^ (1 << x) for x in range(n)]
        return int(count_target(full, n, kind, k)), tuple(full), 1, 1
    if not prune_exclusions:
        raise ValueError("the compiled search always prunes exclusions")
    cdef Search* S = <Search*>calloc(1, sizeof(Search))
    S.n = n
    S.kind = kind
    S.k = k
    S.nl = len(lens)
    for i, L in enumerate(lens):
        S.lens[i] = L
    S.E = 0
    for u in range(n):
        for v in range(u + 1, n):
            S.eu[S.E] = u
            S.ev[S.E] = v
            S.E += 1
    S.suffix = <uint32_t*>calloc((S.E + 1) * n, sizeof(uint32_t))
    for i in range(S.E - 1, -1, -1):
        for x in range(n):
            S.suffix[i * n + x] = S.suffix[(i + 1) * n + x]
        S.suffix[i * n + S.eu[i]] |= (<uint32_t>1) << S.ev[i]
        S.suffix[i * n + S.ev[i]] |= (<uint32_t>1) << S.eu[i]
    S.best = -1
    S.prune = True
    with nogil:
        _search(S, 0)
    result = (int(S.best), tuple(int(S.witness[x]) for x in range(n)), int(S.nodes), int(S.leaves))
    free(S.suffix)
    free(S)
    return result
