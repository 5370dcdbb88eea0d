import pytest

from cycleturan import graph6
from cycleturan.constructions import (
    ConstructionSpec,
    PrimeField,
    balanced_sizes,
    cycle_blowup,
    general_blowup,
    general_blowup_sizes,
    hard_L_free_instance,
    is_prime,
    path_blowup,
    polarity_graph,
    triangle_booster,
)
from cycleturan.counting import (
    contains_cycle_of_length,
    count_cycle_copies,
    count_path_copies,
    shortest_odd_cycle,
)
from cycleturan.extremal.suites import girth_bipartite, projective_incidence
from cycleturan.graph import BipartiteGraph, Graph
from cycleturan.seeding import make_rng


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_field():
    f = PrimeField(7)
    assert f.mul(3, f.inv(3)) == 1
    assert f.add(5, f.neg(5)) == 0
    with pytest.raises(ValueError):
        PrimeField(8)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_polarity_properties(p):
    g, loops = polarity_graph(p, return_loops=True)
    n = p * p - 1
    assert g.n == n
    assert not contains_cycle_of_length(g, 4)
    assert set(g.degrees().tolist()) <= {p - 1, p}
    assert loops <= 2 * p
    # degree sum identity: each vertex has p solutions counting its loop
    assert 2 * g.num_edges + loops == n * p


def test_polarity_rejects_composite():
    with pytest.raises(ValueError):
        polarity_graph(9)
    with pytest.raises(ValueError):
        polarity_graph(2)


def test_balanced_sizes():
    assert balanced_sizes(7, 3) == [3, 2, 2]
    assert balanced_sizes(6, 3) == [2, 2, 2]
    assert balanced_sizes(5, 0) == []


@pytest.mark.parametrize("k,ell,m", [(5, 3, 3), (5, 7, 2), (6, 3, 3), (7, 5, 2), (3, 5, 4)])
def test_cycle_blowup(k, ell, m):
    g = cycle_blowup(k, ell, m)
    assert not contains_cycle_of_length(g, ell)
    assert count_cycle_copies(g, k) >= m ** (k // 2)


def test_cycle_blowup_rejects():
    with pytest.raises(ValueError):
        cycle_blowup(5, 5, 2)
    with pytest.raises(ValueError):
        cycle_blowup(5, 4, 2)
    with pytest.raises(ValueError):
        cycle_blowup(5, 3, 0)


@pytest.mark.parametrize("k,ell,m", [(2, 3, 4), (3, 5, 3), (4, 3, 2)])
def test_path_blowup(k, ell, m):
    g = path_blowup(k, ell, m)
    assert not contains_cycle_of_length(g, ell)
    assert count_path_copies(g, k) >= m ** ((k + 2) // 2)


@pytest.mark.parametrize("target,h,n", [("C5", 7, 12), ("C4", 9, 14), ("P3", 7, 10), ("P2", 5, 9), (("C", 6), 9, 13)])
def test_general_blowup(target, h, n):
    g = general_blowup(target, h, n)
    sizes = general_blowup_sizes(target, h, n)
    assert g.n == n == sum(sizes)
    assert not contains_cycle_of_length(g, h)


def test_general_blowup_rejects():
    with pytest.raises(ValueError):
        general_blowup_sizes("C7", 5, 20)
    with pytest.raises(ValueError):
        general_blowup_sizes("Q5", 7, 20)
    with pytest.raises(ValueError):
        general_blowup_sizes("C5", 7, 3)


def test_triangle_booster_on_girth_eight_input():
    bip = girth_bipartite(12, 12, 6, make_rng(4))
    assert bip.num_edges > 0
    g = triangle_booster(bip, 3)
    assert count_cycle_copies(g, 3) == bip.num_edges
    assert not contains_cycle_of_length(g, 6)


def test_triangle_booster_rejects_short_even_cycles():
    with pytest.raises(ValueError):
        triangle_booster(BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]), 3)


def test_projective_incidence_is_c4_free():
    bip = projective_incidence(3)
    g = bip.to_graph()
    assert bip.a == bip.b == 13 and bip.num_edges == 52
    assert not contains_cycle_of_length(g, 4) and contains_cycle_of_length(g, 6)


def test_girth_bipartite_has_girth():
    bip = girth_bipartite(10, 10, 8, make_rng(2))
    g = bip.to_graph()
    for L in (4, 6, 8):
        assert not contains_cycle_of_length(g, L)


@pytest.mark.parametrize("ell,n", [(3, 20), (5, 28), (7, 9)])
def test_hard_instance(ell, n):
    g = hard_L_free_instance(ell, n)
    assert g.n == n
    assert shortest_odd_cycle(g) == ell + 2
    h = hard_L_free_instance(ell, n + 1, with_isolated=True)
    assert int((h.degrees() == 0).sum()) == 1


def test_hard_instance_rejects():
    with pytest.raises(ValueError):
        hard_L_free_instance(4, 20)
    with pytest.raises(ValueError):
        hard_L_free_instance(5, 6)


def test_spec_roundtrip_and_verify():
    spec = ConstructionSpec("cycle-blowup", {"k": 5, "l": 3, "m": 2})
    again = ConstructionSpec.from_json(spec.to_json())
    assert again == spec
    info = spec.verify(spec.build())
    assert info["C3_free"] and info["copies_of_C5"] >= info["copies_lower_bound"]


def test_spec_polarity_verify():
    spec = ConstructionSpec("polarity", {"p": 5})
    info = spec.verify(spec.build())
    assert info["C4_free"] and info["degrees_in_p_minus_1_or_p"] and info["loops_at_most_2p"]
    assert info["pairs_without_common_neighbour"] <= info["pairs_bound_3np"]


def test_spec_triangle_booster():
    bip = girth_bipartite(8, 8, 6, make_rng(5))
    spec = ConstructionSpec("triangle-booster", {"l": 3, "a": bip.a, "graph6": graph6.encode(bip.to_graph())})
    info = spec.verify(spec.build())
    assert info["triangles"] == info["input_edges"] == bip.num_edges
    assert info["C6_free"]


def test_spec_validation():
    with pytest.raises(ValueError):
        ConstructionSpec("nope", {})
    with pytest.raises(ValueError):
        ConstructionSpec("polarity", {})
