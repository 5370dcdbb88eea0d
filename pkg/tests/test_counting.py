from itertools import combinations, permutations, product

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cycleturan import counting, kernels
from cycleturan.counting import (
    contains_cycle_of_length,
    count_cycle_copies,
    count_path_copies,
    count_paths_from,
    find_cycle_of_length,
    is_L_free,
    partition_cycle_count,
    partition_path_count,
    shortest_odd_cycle,
    twin_quotient,
)
from cycleturan.graph import Graph, VertexPartition, blow_up
from cycleturan.seeding import make_rng

from conftest import random_graph


def naive_cycles(g, k):
    found = set()
    for vs in combinations(range(g.n), k):
        for perm in permutations(vs[1:]):
            seq = (vs[0],) + perm
            if all(g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
                found.add(frozenset(frozenset((seq[i], seq[(i + 1) % k])) for i in range(k)))
    return len(found)


def naive_paths(g, k):
    count = 0
    for seq in permutations(range(g.n), k + 1):
        if seq[0] < seq[-1] and all(g.has_edge(seq[i], seq[i + 1]) for i in range(k)):
            count += 1
    return count


def naive_partition(g, classes, closed):
    s = len(classes)
    total = 0
    for seq in product(*classes):
        hops = s if closed else s - 1
        if all(g.has_edge(seq[i], seq[(i + 1) % s]) for i in range(hops)):
            total += 1
    return total


@pytest.mark.parametrize("seed", range(10))
def test_copy_counts_match_naive(seed):
    rng = make_rng(seed)
    g = random_graph(rng, int(rng.integers(4, 8)), float(rng.uniform(0.3, 0.9)))
    for k in range(3, g.n + 1):
        assert count_cycle_copies(g, k) == naive_cycles(g, k)
        assert contains_cycle_of_length(g, k) == (naive_cycles(g, k) > 0)
    for k in range(1, min(g.n, 6)):
        assert count_path_copies(g, k) == naive_paths(g, k)


def test_known_counts():
    assert count_cycle_copies(Graph.complete(5), 5) == 12
    assert count_cycle_copies(Graph.complete(4), 4) == 3
    assert count_cycle_copies(Graph.petersen(), 5) == 12
    assert count_path_copies(Graph.complete(4), 3) == 12
    assert count_path_copies(Graph.cycle(6), 5) == 6
    assert count_paths_from(Graph.star(4), 0, 1) == 4
    assert count_paths_from(Graph.star(4), 1, 2) == 3
    assert count_path_copies(Graph.path(3), 4) == 0


@pytest.mark.parametrize("seed", range(8))
def test_partition_counts_match_naive(seed):
    rng = make_rng(50 + seed)
    g = random_graph(rng, 9, 0.5)
    s = int(rng.integers(3, 6))
    part = VertexPartition(g, rng.integers(0, s, size=g.n).tolist(), s)
    classes = part.classes()
    assert partition_path_count(g, part) == naive_partition(g, classes, False)
    assert partition_cycle_count(g, part) == naive_partition(g, classes, True)
    assert partition_path_count(g, classes[:2]) == naive_partition(g, classes[:2], False)


def test_partition_count_validation():
    g = Graph.cycle(5)
    with pytest.raises(ValueError):
        partition_cycle_count(g, [[0], [1]])
    with pytest.raises(ValueError):
        partition_path_count(g, [[0, 1], [1]])


def test_partition_count_backends_agree_on_large_classes():
    g, part = blow_up(Graph.cycle(5), [9] * 5)
    with kernels.use_backend("python"):
        expected = partition_cycle_count(g, part)
    assert expected == 9**5 * 1
    assert partition_cycle_count(g, part) == expected


def test_find_cycle_returns_cycle():
    rng = make_rng(7)
    for _ in range(20):
        g = random_graph(rng, 10, 0.3)
        for L in range(3, 9):
            c = find_cycle_of_length(g, L)
            if c is None:
                assert not contains_cycle_of_length(g, L)
            else:
                assert len(set(c)) == L
                assert all(g.has_edge(c[i], c[(i + 1) % L]) for i in range(L))


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@pytest.mark.parametrize("sizes", [[7] * 5, [1, 10, 1, 10, 1, 10, 1], [16, 1, 16, 1, 1], [5, 6, 7, 8, 9]])
def test_quotient_route_matches_dfs(sizes):
    k = len(sizes)
    g, _ = blow_up(Graph.cycle(k), sizes)
    assert g.n > counting.QUOTIENT_MIN_ORDER
    assert counting._quotient_usable(g)
    for L in range(3, 2 * k + 8):
        via_dfs = kernels.has_cycle(g, L)
        assert contains_cycle_of_length(g, L) == via_dfs
        c = find_cycle_of_length(g, L)
        assert (c is not None) == via_dfs
        if c is not None:
            assert len(set(c)) == L
            assert all(g.has_edge(c[i], c[(i + 1) % L]) for i in range(L))


def test_twin_quotient():
    g, _ = blow_up(Graph.cycle(5), [3, 1, 2, 1, 1])
    classes, h = twin_quotient(g)
    assert sorted(len(c) for c in classes) == [1, 1, 1, 2, 3]
    assert h.num_edges == 5


def test_is_L_free():
    c5 = Graph.cycle(5)
    assert is_L_free(c5, [3, 4, 6, 100])
    assert not is_L_free(c5, [5])
    with pytest.raises(ValueError):
        is_L_free(c5, [2])


@given(st.integers(0, 2**31 - 1), st.integers(3, 11))
def test_shortest_odd_cycle_matches_networkx(seed, n):
    g = random_graph(make_rng(seed), n, 0.3)
    h = _nx(g)
    expected = None
    if not nx.is_bipartite(h):
        expected = min(len(c) for c in nx.simple_cycles(h, length_bound=n) if len(c) % 2)
    assert shortest_odd_cycle(g) == expected
