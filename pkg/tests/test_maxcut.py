from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from cycleturan.constructions import hard_L_free_instance
from cycleturan.graph import Graph, blow_up
from cycleturan.seeding import make_rng, stream
from cycleturan.testing.maxcut import (
    bipartite_distance,
    max_cut_exact,
    max_cut_exact_side,
    max_cut_heuristic,
    two_coloring_side,
)

from conftest import random_graph


def numpy_maxcut(g):
    """Independent oracle: evaluate every side vector with matrix algebra."""
    if g.n < 2:
        return 0
    sides = np.array(list(product((0, 1), repeat=g.n - 1)), dtype=np.int8)
    sides = np.hstack([np.zeros((len(sides), 1), dtype=np.int8), sides])
    a = g.adjacency_matrix().astype(np.int64)
    s = sides.astype(np.int64)
    t = 1 - s
    return int(((s @ a) * t).sum(axis=1).max())


def _cut(g, side):
    return sum(side[u] != side[v] for u, v in g.edges())


@pytest.mark.parametrize("seed", range(15))
def test_exact_matches_numpy_oracle(seed):
    rng = make_rng(seed)
    g = random_graph(rng, int(rng.integers(1, 13)), float(rng.uniform(0.1, 0.9)))
    value, side = max_cut_exact_side(g)
    assert value == numpy_maxcut(g) == _cut(g, side)


def test_known_values():
    assert max_cut_exact(Graph.cycle(5)) == 4
    assert max_cut_exact(Graph.complete(4)) == 4
    assert max_cut_exact(blow_up(Graph.cycle(5), [4] * 5)[0]) == 64
    assert bipartite_distance(Graph.complete(4))[0] == 2
    assert bipartite_distance(hard_L_free_instance(3, 20)) == (16, Fraction(1, 25))
    assert max_cut_exact(Graph.complete(5)) == 6
    assert max_cut_exact(Graph.cycle(7)) == 6
    assert max_cut_exact(Graph.petersen()) == 12
    assert max_cut_exact(Graph(0)) == 0


def test_exact_limit():
    with pytest.raises(ValueError):
        max_cut_exact(Graph(30))


def test_heuristic_matches_exact_on_random_graphs():
    mismatches = 0
    for i in range(500):
        rng = stream(11, i)
        g = random_graph(rng, int(rng.integers(2, 21)), float(rng.uniform(0.1, 0.9)))
        if max_cut_heuristic(g, rng) != max_cut_exact(g):
            mismatches += 1
    assert mismatches == 0


def test_heuristic_empty_graph():
    assert max_cut_heuristic(Graph(0), make_rng(0)) == 0
    assert max_cut_heuristic(Graph(5), make_rng(0)) == 0


def test_heuristic_never_exceeds_exact():
    rng = make_rng(5)
    for _ in range(50):
        g = random_graph(rng, 14, 0.5)
        assert max_cut_heuristic(g, rng, restarts=2) <= max_cut_exact(g)


@pytest.mark.parametrize("seed", range(10))
def test_bipartite_inputs_have_distance_zero(seed):
    rng = make_rng(seed)
    a, b = int(rng.integers(1, 100)), int(rng.integers(1, 100))
    edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < 0.3]
    g = Graph.from_edges(a + b, edges)
    side = two_coloring_side(g)
    assert all(side[u] != side[v] for u, v in g.edges())
    assert bipartite_distance(g, "heuristic", rng)[0] == 0


@pytest.mark.parametrize("m", range(1, 6))
def test_c5_blowup_distance(m):
    g, _ = blow_up(Graph.cycle(5), [m] * 5)
    d, far = bipartite_distance(g, "exact")
    assert d == m * m and far == Fraction(1, 25)
    assert bipartite_distance(g, "heuristic", make_rng(0))[0] == m * m


def test_auto_and_bad_method():
    g = Graph.cycle(5)
    assert bipartite_distance(g, "auto")[0] == 1
    with pytest.raises(ValueError):
        bipartite_distance(g, "magic")
    assert bipartite_distance(Graph(0))[1] == 0
