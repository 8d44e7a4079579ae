import pytest

from ditrail import Digraph, complete_digraph, construct, directed_cycle, replay_moves
from ditrail.constructor import (
    IMPOSSIBLE,
    INCONCLUSIVE,
    SUCCESS,
    AugmentationState,
    absorb_two_cycle,
    augment_via_external_path,
    bridge_components,
    initial_trail,
    reroute_segment,
)
from ditrail.errors import ConstructionImpossible, MoveInapplicable, PreconditionError
from ditrail.trails import as_closed, closed_ditrail_through
from ditrail.validator import validate_certificate, validate_trail
from strategies import seeded_digraphs


def _state(D, S, trail):
    return AugmentationState(D, frozenset(S), as_closed(trail))


def test_initial_trail_prefers_more_of_s():
    D = Digraph(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)])
    assert set(initial_trail(D, {1, 2, 3}).vertices) == {1, 2, 3}
    with pytest.raises(ConstructionImpossible):
        initial_trail(Digraph(3, [(0, 1), (1, 2)]), {0, 1})


def test_absorb_two_cycle():
    D = Digraph(4, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 1)])
    st = absorb_two_cycle(_state(D, {3}, (0, 1, 2)), 3, 1)
    assert sorted(st.trail.arcs) == [(0, 1), (1, 2), (1, 3), (2, 0), (3, 1)]
    assert st.moves[-1] == {"move": "absorb_two_cycle", "params": {"x": 3, "w": 1}, "length": 5}
    with pytest.raises(MoveInapplicable):
        absorb_two_cycle(st, 3, 1)
    with pytest.raises(MoveInapplicable):
        absorb_two_cycle(_state(D, {3}, (0, 1, 2)), 3, 0)


def test_external_path_splices_missing_vertex():
    D = Digraph(5, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 4), (4, 2)])
    st = augment_via_external_path(_state(D, {0, 4}, (0, 1, 2)), 4)
    assert st.failure is None
    assert 4 in st.trail.vertex_set and validate_trail(D, st.trail, closed=True)
    p = st.moves[-1]["params"]
    assert p["path"] == [1, 3, 4, 2] and p["approximate"] is False


def test_external_path_reports_failure():
    D = Digraph(4, [(0, 1), (1, 0), (2, 3)])
    st = augment_via_external_path(_state(D, {3}, (0, 1)), 3)
    assert st.failure is not None and st.trail.vertices == (0, 1, 0)


def test_reroute_segment():
    # 3 is reachable only between consecutive trail vertices 0 -> 3 -> 1
    D = Digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)])
    st = reroute_segment(_state(D, {3}, (0, 1, 2)), 3)
    assert st.failure is None and 3 in st.trail.vertex_set


def test_bridge_components():
    A, B = [0, 1, 2], [3, 4, 5]
    arcs = [(u, v) for comp in (A, B) for u in comp for v in comp if u != v]
    arcs += [(0, 6), (6, 3), (3, 7), (7, 0)]
    D = Digraph(8, arcs)
    st = bridge_components(_state(D, range(6), (0, 6, 3, 7)), A, B)
    assert validate_certificate(D, range(6), st.trail)
    with pytest.raises(PreconditionError):
        bridge_components(st, [0, 1], B)
    with pytest.raises(MoveInapplicable):
        bridge_components(_state(D, range(6), (0, 1)), A, B)


def test_construct_statuses():
    assert construct(Digraph(4, [(0, 1), (0, 2), (0, 3)]), {0}).status == IMPOSSIBLE
    res = construct(complete_digraph(5), range(5))
    assert res.status == SUCCESS and validate_certificate(complete_digraph(5), range(5), res.trail)
    assert construct(complete_digraph(7), range(7), budget=0).status in (SUCCESS, INCONCLUSIVE)


def test_construct_agrees_with_oracle_and_replays():
    for D in seeded_digraphs(200, seed=21, n_range=(2, 7), p_range=(0.2, 0.7)):
        S = set(range(0, D.n, 2))
        res = construct(D, S)
        exists = closed_ditrail_through(D, S) is not None
        assert res.success == exists
        if res.success:
            assert validate_certificate(D, S, res.trail)
            assert replay_moves(D, S, res.moves) == res.trail
            assert construct(D, S).moves == res.moves


def test_replay_rejects_tampered_log():
    D = complete_digraph(4)
    res = construct(D, range(4))
    bad = [dict(m) for m in res.moves]
    bad[-1] = {**bad[-1], "length": bad[-1]["length"] + 1}
    with pytest.raises(AssertionError):
        replay_moves(D, range(4), bad)
    with pytest.raises(ValueError):
        replay_moves(D, range(4), [{"move": "teleport", "params": {}, "length": 2}])


def test_directed_cycle_uses_initial_trail_only():
    res = construct(directed_cycle(6), range(6))
    assert [m["move"] for m in res.moves] == ["initial_trail"]
