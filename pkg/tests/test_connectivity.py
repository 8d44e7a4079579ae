import pytest
from hypothesis import given, settings

from ditrail import Digraph, InputError, complete_digraph, directed_cycle
from ditrail.connectivity import (
    arc_strong_connectivity,
    is_S_strong,
    is_strong,
    max_arc_disjoint_paths,
    reachable,
    strong_components,
)
from brute import brute_lambda, same_scc, strong
from strategies import digraphs, seeded_digraphs


@given(digraphs(max_n=7))
def test_scc_matches_transitive_closure(D):
    comp = strong_components(D).component_of
    arcs = list(D.arcs)
    for u in range(D.n):
        for v in range(D.n):
            assert (comp[u] == comp[v]) == same_scc(D.n, arcs, u, v)


def test_scc_members_partition():
    D = Digraph(5, [(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)])
    dec = strong_components(D)
    assert dec.component_count == 2
    assert sorted(sorted(c) for c in dec.components()) == [[0, 1], [2, 3, 4]]


def test_s_strong():
    D = Digraph(4, [(0, 1), (1, 0), (2, 3)])
    assert is_S_strong(D, {0, 1})
    assert not is_S_strong(D, {0, 2})
    assert is_S_strong(D, {3})
    assert not is_strong(D)
    with pytest.raises(InputError):
        is_S_strong(D, set())


def test_reachable_both_directions():
    D = Digraph(3, [(0, 1), (1, 2)])
    assert reachable(D, 0) == {0, 1, 2}
    assert reachable(D, 0, reverse=True) == {0}


def test_max_arc_disjoint_paths_complete():
    assert max_arc_disjoint_paths(complete_digraph(4), 0, 3) == 3
    assert max_arc_disjoint_paths(complete_digraph(4), 0, 3, cap=2) == 2


def test_lambda_examples():
    assert arc_strong_connectivity(directed_cycle(5)) == 1
    assert arc_strong_connectivity(complete_digraph(4)) == 3
    assert arc_strong_connectivity(Digraph(3, [(0, 1), (1, 2)])) == 0
    with pytest.raises(InputError):
        arc_strong_connectivity(Digraph(1))


def test_lambda_matches_arc_cut_enumeration():
    checked = 0
    for D in seeded_digraphs(150, seed=11, n_range=(2, 5), max_arcs=12, p_range=(0.4, 0.9)):
        assert arc_strong_connectivity(D) == brute_lambda(D), D
        checked += 1
    assert checked == 150


@settings(max_examples=60)
@given(digraphs(min_n=2, max_n=6))
def test_lambda_zero_iff_not_strong(D):
    assert (arc_strong_connectivity(D) == 0) == (not strong(D.n, list(D.arcs)))
