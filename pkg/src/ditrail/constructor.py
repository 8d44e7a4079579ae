"""Constructive engine: grow a closed ditrail until it covers ``S``.

Starting from a short dicycle, the engine repeatedly tries local moves that
strictly increase the number of ``S``-vertices on the trail:

* ``absorb_two_cycle``: hang a 2-cycle ``w -> x -> w`` on the trail;
* ``augment_via_external_path``: route an ``(x, y)``-ditrail through a
  missing vertex ``s`` outside the trail and splice it in;
* ``reroute_segment``: replace a short stretch of the trail by a ditrail
  on the same vertices plus ``s`` (bounded exact search);
* ``bridge_components``: for ``D<S>`` made of two disjoint complete
  digraphs, weave spanning ditrails of both into a trail that visits both.

The moves are not complete.  When they stall, the exact oracle decides, so
the result is always either a validated trail, a certified impossibility,
or an explicit "inconclusive".
"""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass, field

from .budget import Budget, as_budget
from .digraph import Digraph, induced
from .errors import (
    BudgetExhausted,
    ConstructionImpossible,
    LemmaViolation,
    MoveInapplicable,
    PreconditionError,
)
from .matching import digraph_matching, lemma32_analyze, special_case_components
from .trails import (
    ClosedDitrail,
    Ditrail,
    closed_ditrail_through,
    ditrail_with_vertex_set,
    splice,
    strictly_strong_witness,
)
from .validator import validate_certificate, validate_trail

SUCCESS = "success"
IMPOSSIBLE = "certified-impossible"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class AugmentationState:
    D: Digraph
    S: frozenset[int]
    trail: ClosedDitrail
    moves: tuple[dict, ...] = ()
    failure: str | None = None

    @property
    def covered(self) -> frozenset[int]:
        return self.trail.vertex_set & self.S

    @property
    def pending(self) -> list[int]:
        return sorted(self.S - self.trail.vertex_set)

    def advance(self, trail: ClosedDitrail, move: str, params: dict) -> AugmentationState:
        if not validate_trail(self.D, trail, closed=True):
            raise AssertionError(f"move {move} produced an invalid trail {trail.vertices}")
        entry = {"move": move, "params": params, "length": trail.length}
        return dataclasses.replace(self, trail=trail, moves=self.moves + (entry,), failure=None)

    def fail(self, reason: str) -> AugmentationState:
        return dataclasses.replace(self, failure=reason)


@dataclass
class ConstructionResult:
    status: str
    trail: ClosedDitrail | None
    moves: list[dict] = field(default_factory=list)
    fallback_used: bool = False

    @property
    def success(self) -> bool:
        return self.status == SUCCESS


def _shortest_cycle_through(D: Digraph, s: int) -> tuple[int, ...] | None:
    parent = {s: None}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in sorted(D.out_neighbors(v)):
            if w == s:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return tuple(path) + (s,)
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def initial_trail(D: Digraph, S) -> ClosedDitrail:
    """Shortest dicycle through some vertex of ``S``, preferring more of ``S``."""
    S = D.check_vertex_set(S, nonempty=True)
    best = None
    for s in sorted(S):
        c = _shortest_cycle_through(D, s)
        if c is None:
            continue
        key = (-len(set(c) & S), len(c), c)
        if best is None or key < best:
            best = key
    if best is None:
        raise ConstructionImpossible("no vertex of S lies on a dicycle")
    return ClosedDitrail(best[2])


def absorb_two_cycle(state: AugmentationState, x: int, w: int) -> AugmentationState:
    """Insert ``w -> x -> w`` at the first occurrence of ``w`` on the trail."""
    Q, D = state.trail, state.D
    if x in Q.vertex_set:
        raise MoveInapplicable(f"{x} already lies on the trail")
    if w not in Q.vertex_set:
        raise MoveInapplicable(f"{w} is not on the trail")
    if (x, w) not in D.arcs or (w, x) not in D.arcs:
        raise MoveInapplicable(f"{x} and {w} are not joined both ways")
    pos = Q.positions(w)[0]
    new = splice(Q, Ditrail((w, x, w)), w, w, y_pos=pos, x_pos=pos)
    return state.advance(new, "absorb_two_cycle", {"x": x, "w": w})


def _simple_paths(D: Digraph, src: int, allowed: frozenset[int], targets: frozenset[int],
                  reverse: bool, budget: Budget) -> list[tuple[int, ...]]:
    """All simple dipaths leaving ``src`` through ``allowed`` and ending in ``targets``.

    With ``reverse=True`` paths are followed backwards, and each result is
    returned in forward orientation (ending at ``src``).
    """
    nbrs = D.in_neighbors if reverse else D.out_neighbors
    found = []

    def go(path, seen):
        budget.tick()
        for w in sorted(nbrs(path[-1])):
            if w in targets:
                found.append(path + (w,))
            elif w in allowed and w not in seen:
                go(path + (w,), seen | {w})

    go((src,), frozenset([src]))
    if reverse:
        found = [tuple(reversed(p)) for p in found]
    return found


def _bfs_path(D: Digraph, src: int, allowed, targets, reverse: bool, banned=frozenset()):
    nbrs = D.in_neighbors if reverse else D.out_neighbors
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in sorted(nbrs(v)):
            arc = (w, v) if reverse else (v, w)
            if arc in banned or w in parent:
                continue
            if w in targets or w in allowed:
                parent[w] = v
                if w in targets:
                    path = [w]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return tuple(path) if reverse else tuple(reversed(path))
                queue.append(w)
    return None


def _best_splice(Q: ClosedDitrail, T: Ditrail, S: frozenset[int]):
    x, y = T.start, T.end
    best = None
    for yp in Q.positions(y):
        for xp in Q.positions(x):
            if x == y and xp != yp:
                continue
            kept = Q.segment(yp, xp)
            if set(kept.arcs) & set(T.arcs):
                continue
            new = splice(Q, T, x, y, y_pos=yp, x_pos=xp)
            key = (len(new.vertex_set & S), -new.length, -yp, -xp)
            if best is None or key > best[0]:
                best = (key, new, yp, xp)
    return best


def augment_via_external_path(state: AugmentationState, s: int, exact_limit: int = 7,
                              budget: Budget | int | None = None,
                              max_paths: int = 150) -> AugmentationState:
    """Splice in an ``(x, y)``-ditrail ``T`` through ``s`` meeting the trail only at ``x, y``.

    ``T`` is ``P2 P1`` with ``P2`` an ``(x, s)``-dipath and ``P1`` an
    ``(s, y)``-dipath whose interiors avoid the trail.  Pairs are tried in
    order of ``|V(P1)| + |V(P2)|``; when at most ``exact_limit`` vertices lie
    off the trail every pair is enumerated, otherwise one greedy pair
    (shortest ``P1``, then shortest arc-disjoint ``P2``) is used and the
    move is flagged approximate.
    """
    D, Q, S = state.D, state.trail, state.S
    budget = as_budget(budget)
    on_q = Q.vertex_set
    if s in on_q:
        return state.fail(f"{s} already on the trail")
    off = frozenset(range(D.n)) - on_q - {s}
    case = 1 if (D.neighbors(s) & on_q) else 2
    approximate = len(off) > exact_limit
    if approximate:
        P1 = _bfs_path(D, s, off, on_q, reverse=False)
        if P1 is None:
            return state.fail(f"no dipath from {s} back to the trail")
        P2 = _bfs_path(D, s, off, on_q, reverse=True, banned=frozenset(zip(P1, P1[1:])))
        if P2 is None:
            return state.fail(f"no dipath from the trail to {s}")
        candidates = [(P1, P2)]
    else:
        outs = _simple_paths(D, s, off, on_q, False, budget)
        ins = _simple_paths(D, s, off, on_q, True, budget)
        if not outs or not ins:
            return state.fail(f"{s} has no external connection to the trail")
        # keep the pair count bounded; shortest paths first
        outs = sorted(outs, key=lambda p: (len(p), p))[:max_paths]
        ins = sorted(ins, key=lambda p: (len(p), p))[:max_paths]
        candidates = sorted(
            ((p1, p2) for p1 in outs for p2 in ins),
            key=lambda pr: (len(pr[0]) + len(pr[1]), pr[1], pr[0]),
        )

    current = len(Q.vertex_set & S)
    for P1, P2 in candidates:
        budget.tick()
        if set(zip(P1, P1[1:])) & set(zip(P2, P2[1:])):
            continue
        T = Ditrail(P2 + P1[1:])
        best = _best_splice(Q, T, S)
        if best is None or best[0][0] <= current:
            continue
        _, new, yp, xp = best
        overlap = sorted(set(P1[1:-1]) & set(P2[1:-1]))
        params = {
            "s": s, "case": case, "x": T.start, "y": T.end, "y_pos": yp, "x_pos": xp,
            "path": list(T.vertices), "P1": list(P1), "P2": list(P2),
            "overlap": overlap, "approximate": approximate,
        }
        return state.advance(new, "augment_via_external_path", params)
    return state.fail(f"no external ditrail through {s} enlarges the covered set")


def reroute_segment(state: AugmentationState, s: int, max_segment: int = 6,
                    per_search: int = 2000) -> AugmentationState:
    """Replace a stretch ``Q[a, b]`` by an ``(a, b)``-ditrail on ``V(Q[a, b]) + s``.

    The replacement avoids the arcs of the rest of the trail.  Each search
    has its own small budget; an exhausted search just skips that stretch.
    """
    D, Q = state.D, state.trail
    if s in Q.vertex_set:
        return state.fail(f"{s} already on the trail")
    k = len(Q.cycle)
    for span in range(1, min(max_segment, k - 1) + 1):
        for i in range(k):
            j = (i + span) % k
            seg = Q.segment(i, j)
            rest = Q.segment(j, i)
            try:
                T = ditrail_with_vertex_set(
                    D, seg.start, seg.end, seg.vertex_set | {s},
                    budget=Budget(per_search), forbidden=rest.arcs)
            except BudgetExhausted:
                continue
            if T is None:
                continue
            new = splice(Q, T, seg.start, seg.end, y_pos=j, x_pos=i)
            params = {"s": s, "x": seg.start, "y": seg.end, "y_pos": j, "x_pos": i,
                      "path": list(T.vertices)}
            return state.advance(new, "reroute_segment", params)
    return state.fail(f"no short stretch of the trail can be rerouted through {s}")


def _spanning(comp, a, b):
    rest = sorted(comp - {a, b})
    if a == b:
        return (a, *rest, a)
    return (a, *rest, b)


def bridge_components(state: AugmentationState, compA, compB) -> AugmentationState:
    """Cover two disjoint complete digraphs visited by the trail.

    With ``x_h -> ... -> x_h'`` the first stretch of the trail leaving
    ``compA`` for ``compB`` and ``x_l' -> ... -> x_l`` the next stretch
    coming back, the result is that pair of stretches joined by a spanning
    ``(x_h', x_l')``-ditrail of ``compB`` and a spanning ``(x_l, x_h)``-ditrail
    of ``compA``.
    """
    D, Q = state.D, state.trail
    A, B = frozenset(compA), frozenset(compB)
    if len(A) < 2 or len(B) < 2 or len(A) != len(B) or A & B:
        raise PreconditionError("components must be disjoint, of equal size m+1 with m > 0")
    for comp in (A, B):
        for a in comp:
            for b in comp:
                if a != b and (a, b) not in D.arcs:
                    raise MoveInapplicable(f"component {sorted(comp)} is not complete")
    c = Q.cycle
    starts = [i for i, v in enumerate(c) if v in A]
    if not starts or not any(v in B for v in c):
        raise MoveInapplicable("trail does not visit both components")
    c = c[starts[0]:] + c[:starts[0]]
    L = len(c)
    j = next(i for i, v in enumerate(c) if v in B)
    h = max(i for i in range(j) if c[i] in A)
    k = next((i for i in range(j + 1, L) if c[i] in A), L)
    lp = max(i for i in range(j, k) if c[i] in B)
    ext = c + (c[0],)
    seg1 = ext[h:j + 1]
    seg2 = ext[lp:k + 1]
    x_h, x_hp, x_lp, x_l = seg1[0], seg1[-1], seg2[0], seg2[-1]
    TB = _spanning(B, x_hp, x_lp)
    TA = _spanning(A, x_l, x_h)
    verts = seg1 + TB[1:] + seg2[1:] + TA[1:]
    new = ClosedDitrail(verts)
    params = {"comp_a": sorted(A), "comp_b": sorted(B),
              "x_h": x_h, "x_h_prime": x_hp, "x_l_prime": x_lp, "x_l": x_l}
    return state.advance(new, "bridge_components", params)


def _special_case_route(D: Digraph, S: frozenset[int], budget: Budget):
    """Components of ``D<S>`` when it is two disjoint complete digraphs, else None."""
    H = induced(D, S)
    M = digraph_matching(H)
    if M.m == 0 or special_case_components(H, M) is None:
        return None
    try:
        st = lemma32_analyze(H, M)
    except (PreconditionError, LemmaViolation):
        return None
    if st.special_case is None:
        return None
    A, B = st.special_case
    return (frozenset(H.origin[v] for v in A), frozenset(H.origin[v] for v in B))


def construct(D: Digraph, S, budget: Budget | int | None = None,
              exact_limit: int = 7) -> ConstructionResult:
    """Build a closed ditrail through ``S`` by local moves, else by the oracle."""
    S = D.check_vertex_set(S, nonempty=True)
    budget = as_budget(budget)
    state = None
    try:
        comps = _special_case_route(D, S, budget)
        if comps is not None:
            w = strictly_strong_witness(D, S, budget)
            if w is not None:
                state = AugmentationState(D, S, w.trail)
                state = state.advance(w.trail, "initial_trail",
                                      {"source": "strictly-strong", "trail": list(w.trail.vertices)})
                state = bridge_components(state, *comps)

        if state is None:
            try:
                Q = initial_trail(D, S)
            except ConstructionImpossible:
                Q = None
            if Q is not None:
                state = AugmentationState(D, S, Q)
                state = state.advance(Q, "initial_trail",
                                      {"source": "shortest-dicycle", "trail": list(Q.vertices)})
                state = _grow(state, exact_limit, budget)

        if state is not None and not state.pending:
            return _finish(state, SUCCESS, fallback=False)

        Q = closed_ditrail_through(D, S, budget)
    except BudgetExhausted:
        moves = list(state.moves) if state is not None else []
        return ConstructionResult(INCONCLUSIVE, None, moves)
    moves = list(state.moves) if state is not None else []
    if Q is None:
        return ConstructionResult(IMPOSSIBLE, None, moves)
    state = AugmentationState(D, S, Q, tuple(moves))
    state = state.advance(Q, "oracle_fallback", {"trail": list(Q.vertices)})
    return _finish(state, SUCCESS, fallback=True)


def _grow(state: AugmentationState, exact_limit: int, budget: Budget) -> AugmentationState:
    progress = True
    while progress and state.pending:
        progress = False
        for s in state.pending:
            for w in sorted(state.trail.vertex_set):
                try:
                    state = absorb_two_cycle(state, s, w)
                    progress = True
                    break
                except MoveInapplicable:
                    pass
            if progress:
                break
            nxt = augment_via_external_path(state, s, exact_limit, budget)
            if nxt.failure is None:
                state, progress = nxt, True
                break
            nxt = reroute_segment(state, s)
            if nxt.failure is None:
                state, progress = nxt, True
                break
    return state


def _finish(state: AugmentationState, status: str, fallback: bool) -> ConstructionResult:
    if not validate_certificate(state.D, state.S, state.trail):
        raise AssertionError("constructed trail fails validation")
    return ConstructionResult(status, state.trail, list(state.moves), fallback)


def replay_moves(D: Digraph, S, moves) -> ClosedDitrail:
    """Re-apply a move log and return the final trail; every step is re-validated."""
    S = D.check_vertex_set(S, nonempty=True)
    state = None
    for entry in moves:
        name, p = entry["move"], entry["params"]
        if name in ("initial_trail", "oracle_fallback"):
            Q = ClosedDitrail(tuple(p["trail"]))
            base = AugmentationState(D, S, Q) if state is None else state
            state = base.advance(Q, name, p)
        elif name == "absorb_two_cycle":
            state = absorb_two_cycle(state, p["x"], p["w"])
        elif name in ("augment_via_external_path", "reroute_segment"):
            T = Ditrail(tuple(p["path"]))
            new = splice(state.trail, T, p["x"], p["y"], y_pos=p["y_pos"], x_pos=p["x_pos"])
            state = state.advance(new, name, p)
        elif name == "bridge_components":
            state = bridge_components(state, p["comp_a"], p["comp_b"])
        else:
            raise ValueError(f"unknown move {name!r}")
        if state.trail.length != entry["length"]:
            raise AssertionError(f"replayed {name} gives length {state.trail.length}, "
                                 f"log says {entry['length']}")
    if state is None:
        raise ValueError("empty move log")
    return state.trail
