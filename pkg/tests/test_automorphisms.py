import itertools

import pytest

from orientkit import perms
from orientkit.automorphisms import (
    as_automorphism,
    automorphism_cycle_data,
    enumerate_automorphisms,
    induced_actions,
    is_automorphism,
)
from orientkit.graphs import NotAnAutomorphism, preserves_partitions
from orientkit.limits import SizeLimitExceeded

from conftest import complete_graph, flower


def automorphisms_bruteforce(g):
    """Oracle: filter all half-edge permutations through the definition."""
    return {
        p
        for p in itertools.permutations(range(g.half_edge_count))
        if is_automorphism(g, p)
    }


def test_is_automorphism_examples(loop, single_edge, triangle):
    assert is_automorphism(loop, (1, 0))
    assert is_automorphism(single_edge, (1, 0))
    assert not is_automorphism(triangle, (1, 0, 2, 3, 4, 5))
    with pytest.raises(ValueError):
        is_automorphism(triangle, (1, 0))


def test_enumerate_counts_match_bruteforce(loop, double_edge, triangle):
    for g, expected in ((loop, 2), (double_edge, 4), (triangle, 6)):
        auts = enumerate_automorphisms(g)
        assert len(auts) == expected
        assert {a.perm for a in auts} == automorphisms_bruteforce(g)


def test_enumeration_is_sorted_and_deduplicated(triangle):
    auts = enumerate_automorphisms(triangle)
    perms_list = [a.perm for a in auts]
    assert perms_list == sorted(set(perms_list))
    assert perms.identity(6) in perms_list


def test_group_axioms_on_corpus(corpus3):
    for g, auts in corpus3:
        group = {a.perm for a in auts}
        assert perms.identity(g.half_edge_count) in group
        for p in group:
            assert perms.inverse(p) in group
        for p in group:
            for q in group:
                assert perms.compose(p, q) in group


def test_induced_actions_examples(loop, double_edge, triangle):
    rho = as_automorphism(triangle, (2, 3, 4, 5, 0, 1))
    acts = induced_actions(triangle, rho)
    assert acts.edge_perm == (1, 2, 0)
    assert acts.vertex_perm == (1, 2, 0)

    swap = as_automorphism(loop, (1, 0))
    acts = induced_actions(loop, swap)
    assert acts.edge_perm == (0,)
    assert acts.vertex_perm == (0,)

    half_flip = as_automorphism(double_edge, (1, 0, 3, 2))
    acts = induced_actions(double_edge, half_flip)
    assert acts.edge_perm == (0, 1)
    assert acts.vertex_perm == (1, 0)


def test_induced_actions_commute_with_composition(corpus3):
    for g, auts in corpus3:
        table = {a.perm: induced_actions(g, a) for a in auts}
        for a in auts:
            for b in auts:
                combined = table[perms.compose(a.perm, b.perm)]
                assert combined.edge_perm == perms.compose(
                    table[a.perm].edge_perm, table[b.perm].edge_perm
                )
                assert combined.vertex_perm == perms.compose(
                    table[a.perm].vertex_perm, table[b.perm].vertex_perm
                )


def test_cycle_data_examples(loop, triangle):
    rho = as_automorphism(triangle, (2, 3, 4, 5, 0, 1))
    data = automorphism_cycle_data(triangle, rho)
    assert data.half_edges == (3, 3)
    assert data.edges == (3,)
    assert data.vertices == (3,)

    ident = as_automorphism(triangle, perms.identity(6))
    data = automorphism_cycle_data(triangle, ident)
    assert data.half_edges == (1,) * 6
    assert data.edges == (1,) * 3
    assert data.vertices == (1,) * 3

    swap = as_automorphism(loop, (1, 0))
    data = automorphism_cycle_data(loop, swap)
    assert (data.half_edges, data.edges, data.vertices) == ((2,), (1,), (1,))


def test_odd_power_normalize_stays_in_group(corpus3):
    for g, auts in corpus3:
        for a in auts:
            _, q = perms.odd_power_normalize(a.perm)
            assert preserves_partitions(g, q)


def test_as_automorphism_rejects(triangle):
    with pytest.raises(NotAnAutomorphism):
        as_automorphism(triangle, (1, 0, 2, 3, 4, 5))


def test_size_cap_and_override():
    k5 = complete_graph(5)  # 20 half-edges
    with pytest.raises(SizeLimitExceeded):
        enumerate_automorphisms(k5)
    auts = enumerate_automorphisms(k5, max_half_edges=20)
    assert len(auts) == 120  # S_5 lifts uniquely to half-edges

    k4 = complete_graph(4)
    assert len(enumerate_automorphisms(k4)) == 24


def test_flower_group_order():
    # k loops on one vertex: swap halves independently, permute loops.
    assert len(enumerate_automorphisms(flower(2))) == 8
    assert len(enumerate_automorphisms(flower(3))) == 48


def test_empty_graph_group():
    from orientkit.graphs import validate

    auts = enumerate_automorphisms(validate(0, [], []))
    assert [a.perm for a in auts] == [()]
