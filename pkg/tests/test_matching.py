import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ditrail import Digraph, PreconditionError, UndirectedGraph, complete_digraph
from ditrail.errors import InputError
from ditrail.matching import (
    Matching,
    digraph_matching,
    find_augmenting_path,
    lemma31_check,
    lemma32_analyze,
    matching_number_digraph,
    maximum_matching,
    special_case_components,
)
from ditrail.validator import validate_matching
from brute import brute_matching_number


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return UndirectedGraph(n, edges)


def test_odd_cycle_blossom():
    # triangle with a pendant path forces a blossom contraction
    G = UndirectedGraph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    assert maximum_matching(G).m == 3


def test_petersen_perfect():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    M = maximum_matching(UndirectedGraph(10, outer + inner + spokes))
    assert M.m == 5


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_blossom_equals_enumeration(G):
    M = maximum_matching(G)
    assert validate_matching(G, M)
    assert M.m == brute_matching_number(G)
    assert find_augmenting_path(G, M) is None


def _random_matching(G, rng):
    edges = sorted(G.edges)
    rng.shuffle(edges)
    used, chosen = set(), []
    for u, v in edges:
        if u not in used and v not in used and rng.random() < 0.6:
            chosen.append((u, v))
            used.update((u, v))
    return Matching(chosen)


def _check_path(G, M, path):
    assert len(path) % 2 == 0 and len(set(path)) == len(path)
    matched = M.vertex_set
    assert path[0] not in matched and path[-1] not in matched
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        assert G.has_edge(a, b)
        assert ((min(a, b), max(a, b)) in M.edges) == (i % 2 == 1)


@settings(max_examples=200, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_berge_equivalence(G, rng):
    M = _random_matching(G, rng)
    path = find_augmenting_path(G, M)
    assert (path is None) == (M.m == brute_matching_number(G))
    if path is not None:
        _check_path(G, M, path)


def test_invalid_matching_rejected():
    G = UndirectedGraph(3, [(0, 1), (1, 2)])
    with pytest.raises(InputError):
        find_augmenting_path(G, Matching([(0, 1), (1, 2)]))
    with pytest.raises(InputError):
        find_augmenting_path(G, Matching([(0, 2)]))


def test_digraph_matching_witness_arcs():
    H = Digraph(4, [(1, 0), (2, 3), (3, 2)])
    M = digraph_matching(H)
    assert M.m == 2
    assert M.witness[(0, 1)] == (1, 0)
    assert M.witness[(2, 3)] == (2, 3)
    assert validate_matching(H, M)
    assert matching_number_digraph(H, {0, 1, 2}) == 1


# -- degree structure of maximum matchings -------------------------------

def test_lemma31_nonmaximum_detected():
    # path x0 - a - b - x1 with M = {ab}: x1 has degree 3 >= 2m+1
    H = Digraph(4, [(0, 1), (2, 3), (3, 2), (1, 2)])
    assert lemma31_check(H, Matching([(1, 2)]))


def test_lemma31_preconditions():
    H = complete_digraph(4)
    with pytest.raises(PreconditionError):
        lemma31_check(H, Matching([]))
    with pytest.raises(PreconditionError):
        lemma31_check(H, Matching([(0, 1), (2, 3)]))
    with pytest.raises(PreconditionError):
        lemma31_check(H, Matching([(0, 1)]), X={2})
    sparse = Digraph(5, [(0, 1), (1, 0), (2, 3), (3, 2), (0, 2)])
    with pytest.raises(PreconditionError):
        lemma31_check(sparse, Matching([(0, 1), (2, 3)]))


def _hub_leaf(m, leaves, hub_arcs=()):
    hubs = range(m)
    L = range(m, m + leaves)
    arcs = [(h, x) for h in hubs for x in L] + [(x, h) for h in hubs for x in L]
    return Digraph(m + leaves, arcs + list(hub_arcs))


def test_lemma32_general_case_labels():
    H = _hub_leaf(2, 4)
    M = Matching([(0, 2), (1, 3)])
    st_ = lemma32_analyze(H, M)
    assert st_.special_case is None
    assert st_.X == {4, 5}
    assert st_.labels == {(0, 2): (0, 2), (1, 3): (1, 3)}
    assert st_.independent_set == {2, 3}
    assert st_.as_dict()["labels"][0] == {"edge": [0, 2], "v": 0, "u": 2}


def test_lemma32_special_case_two_cliques():
    a, b = complete_digraph(3), complete_digraph(3)
    H = Digraph(6, list(a.arcs) + [(u + 3, v + 3) for u, v in b.arcs])
    M = Matching([(0, 1), (3, 4)])
    assert special_case_components(H, M) is not None
    st_ = lemma32_analyze(H, M)
    assert st_.special_case == ({0, 1, 2}, {3, 4, 5})
    assert st_.as_dict(origin=(10, 11, 12, 13, 14, 15))["special_case"] == [[10, 11, 12], [13, 14, 15]]


def test_lemma32_preconditions():
    H = _hub_leaf(2, 4)
    with pytest.raises(PreconditionError):
        lemma32_analyze(H, Matching([(0, 2)]))
    with pytest.raises(PreconditionError):
        lemma32_analyze(complete_digraph(4), Matching([(0, 1), (2, 3)]))
    low = Digraph(6, [(0, 1), (1, 0), (2, 3), (3, 2)])
    with pytest.raises(PreconditionError):
        lemma32_analyze(low, Matching([(0, 1), (2, 3)]))


def test_lemma32_star_meets_preconditions():
    star = Digraph(4, [(0, 1), (1, 0), (1, 2), (2, 1), (1, 3), (3, 1)])
    st_ = lemma32_analyze(star, Matching([(0, 1)]))
    assert st_.labels == {(0, 1): (1, 0)}


def test_random_matchings_are_valid():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 8)
        G = UndirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        assert validate_matching(G, _random_matching(G, rng))
