import pytest
from hypothesis import given

from ditrail import Digraph, InputError, ParseError, complete_digraph, directed_cycle
from ditrail.digraph import (
    arc_induced,
    are_adjacent,
    degree_profile,
    digraph_sha256,
    format_digraph,
    induced,
    is_semicomplete,
    min_semi_degree,
    nonadjacent_pairs,
    parse_digraph,
    parse_instance,
    restricted_degree,
    underlying_graph,
    union,
)
from ditrail.trails import Ditrail
from strategies import digraphs


def test_loops_and_range_rejected():
    with pytest.raises(InputError):
        Digraph(3, [(1, 1)])
    with pytest.raises(InputError):
        Digraph(3, [(0, 3)])
    with pytest.raises(InputError):
        Digraph(-1)


def test_opposite_pair_allowed_duplicates_collapse():
    D = Digraph(2, [(0, 1), (1, 0), (0, 1)])
    assert D.num_arcs == 2


def test_degree_profile_complete():
    D = complete_digraph(4)
    assert degree_profile(D, 2) == (3, 3, 6)
    assert min_semi_degree(D) == 3


def test_restricted_degree_forms():
    D = complete_digraph(4)
    T = Ditrail((0, 1))
    assert restricted_degree(D, 3, T).total == 4
    assert restricted_degree(D, 3, {0, 1, 3}).total == 4
    H = induced(D, [0, 1])
    assert restricted_degree(D, 3, H).total == 4


def test_min_semi_degree_empty_digraph_errors():
    with pytest.raises(InputError):
        min_semi_degree(Digraph(0))


def test_induced_origin_and_arcs():
    D = directed_cycle(5)
    H = induced(D, [1, 2, 4])
    assert H.origin == (1, 2, 4)
    assert H.arcs == {(0, 1)}


def test_arc_induced_rejects_foreign_arc():
    D = directed_cycle(3)
    H = arc_induced(D, [(1, 2)])
    assert H.n == 2 and H.origin == (1, 2)
    with pytest.raises(InputError):
        arc_induced(D, [(2, 1)])


def test_union_and_underlying():
    U = union(Digraph(2, [(0, 1)]), Digraph(3, [(2, 0)]))
    assert U.n == 3 and U.arcs == {(0, 1), (2, 0)}
    G = underlying_graph(Digraph(2, [(0, 1), (1, 0)]))
    assert G.edges == {(0, 1)}


def test_adjacency_and_semicomplete():
    D = Digraph(3, [(0, 1), (1, 2)])
    assert are_adjacent(D, 1, 0)
    assert not are_adjacent(D, 0, 2)
    with pytest.raises(InputError):
        are_adjacent(D, 1, 1)
    assert not is_semicomplete(D)
    assert is_semicomplete(Digraph(3, [(0, 1), (1, 2), (2, 0)]))
    assert nonadjacent_pairs(D, range(3)) == [(0, 2)]


def test_parse_with_comments_and_s_line():
    D, S = parse_instance("# demo\n3 2\n0 1\n\n1 2\nS: 0 2\n")
    assert D == Digraph(3, [(0, 1), (1, 2)])
    assert S == {0, 2}


@pytest.mark.parametrize("text", [
    "", "3\n", "2 1\n0 1\n1 0\n", "2 2\n0 1\n0 1\n", "2 1\n0 0\n", "2 1\n0 5\n",
    "2 1\na b\n", "2 0\nS: 7\n", "2 0\nS: 0\nS: 1\n", "2 0\nS: x\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_instance(text)


def test_parse_error_is_input_error():
    assert issubclass(ParseError, InputError)


@given(digraphs(max_n=7))
def test_format_parse_round_trip(D):
    assert parse_digraph(format_digraph(D)) == D
    assert digraph_sha256(parse_digraph(format_digraph(D))) == digraph_sha256(D)


def test_format_is_canonical():
    a = Digraph(3, [(2, 0), (0, 1)])
    b = Digraph(3, [(0, 1), (2, 0)])
    assert format_digraph(a) == format_digraph(b) == "3 2\n0 1\n2 0\n"
    assert format_digraph(a, {2, 0}).endswith("S: 0 2\n")
