"""Ditrails, closed ditrails and exact searches over them.

A ditrail is stored as its vertex sequence ``v0 v1 ... vk``; in a strict
digraph that sequence determines the arcs.  A closed ditrail repeats its
first vertex at the end and has at least two arcs.

Two independent exact oracles decide whether a closed ditrail through a
vertex set ``W`` exists:

* ``method="dfs"`` extends a trail arc by arc from ``min(W)``, pruning on
  reachability of the unvisited part of ``W`` through unused arcs;
* ``method="subset"`` enumerates balanced arc subsets (in-degree equal to
  out-degree everywhere) and keeps one whose weak component holds all of
  ``W``; an Euler circuit of that component is the witness.

Both accept a :class:`~ditrail.budget.Budget` and raise
:class:`~ditrail.errors.BudgetExhausted` instead of guessing.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .budget import Budget, as_budget
from .connectivity import strong_components
from .digraph import Arc, Digraph, nonadjacent_pairs, restricted_degree
from .errors import BudgetExhausted, ContractViolation, InputError, SpliceError


@dataclass(frozen=True)
class Ditrail:
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ContractViolation("a ditrail has at least one vertex")
        arcs = list(zip(vs, vs[1:]))
        for u, v in arcs:
            if u == v:
                raise ContractViolation(f"loop ({u}, {v}) in trail")
        if len(set(arcs)) != len(arcs):
            raise ContractViolation(f"repeated arc in trail {vs}")

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def is_closed(self) -> bool:
        return self.length >= 2 and self.start == self.end

    def __len__(self):
        return self.length

    def to_text(self) -> str:
        return " ".join(map(str, self.vertices))


class ClosedDitrail(Ditrail):
    """Closed ditrail ``v0 v1 ... v_{k-1} v0`` with ``k >= 2`` arcs."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_closed:
            raise ContractViolation(f"{self.vertices} is not a closed ditrail")

    @property
    def cycle(self) -> tuple[int, ...]:
        """Vertex sequence without the repeated last vertex (positions ``0..k-1``)."""
        return self.vertices[:-1]

    def rotate(self, pos: int) -> ClosedDitrail:
        c = self.cycle
        pos %= len(c)
        r = c[pos:] + c[:pos]
        return ClosedDitrail(r + (r[0],))

    def positions(self, v: int) -> list[int]:
        return [i for i, w in enumerate(self.cycle) if w == v]

    def segment(self, i: int, j: int) -> Ditrail:
        """Sub-ditrail from position ``i`` forward to position ``j``.

        ``i == j`` gives the whole closed trail starting at position ``i``.
        """
        c = self.cycle
        if j > i:
            return Ditrail(c[i:j + 1])
        if j < i:
            return Ditrail(c[i:] + c[:j + 1])
        return Ditrail(c[i:] + c[:i] + (c[i],))


def as_closed(vertices: Sequence[int]) -> ClosedDitrail:
    """Build a closed ditrail, appending the first vertex if missing."""
    vs = tuple(vertices)
    if len(vs) >= 2 and vs[0] != vs[-1]:
        vs = vs + (vs[0],)
    return ClosedDitrail(vs)


def splice(Q: ClosedDitrail, T: Ditrail, x: int, y: int,
           y_pos: int | None = None, x_pos: int | None = None) -> ClosedDitrail:
    """Closed ditrail ``Q[y, x]`` followed by the ``(x, y)``-ditrail ``T``.

    ``y_pos``/``x_pos`` pick the occurrences of ``y`` and ``x`` on ``Q``;
    by default the first occurrence of ``y`` and the first occurrence of
    ``x`` after it.  When ``x == y`` and the positions coincide, all of
    ``Q`` is kept and ``T`` is inserted at ``x``.
    """
    if T.start != x or T.end != y:
        raise SpliceError(f"T runs from {T.start} to {T.end}, expected ({x}, {y})")
    c = Q.cycle
    ys = Q.positions(y)
    xs = Q.positions(x)
    if not ys or not xs:
        raise InputError(f"splice endpoints {x}, {y} must lie on the closed ditrail")
    if y_pos is None:
        y_pos = ys[0]
    if x_pos is None:
        k = len(c)
        x_pos = min(xs, key=lambda p: (p - y_pos) % k)
    if c[y_pos] != y or c[x_pos] != x:
        raise InputError("splice positions do not hold the requested vertices")
    kept = Q.segment(y_pos, x_pos)
    if set(kept.arcs) & set(T.arcs):
        raise SpliceError("T shares an arc with the kept part of Q")
    verts = kept.vertices + T.vertices[1:]
    try:
        return ClosedDitrail(verts)
    except ContractViolation as exc:
        raise SpliceError(str(exc)) from None


# ---------------------------------------------------------------------------
# Balanced subdigraphs and Euler circuits


@dataclass(frozen=True)
class BalancedSubdigraph:
    arcs: frozenset[Arc]

    def __init__(self, arcs: Iterable[Arc]):
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in arcs))

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for a in self.arcs for v in a)

    @property
    def is_balanced(self) -> bool:
        bal = defaultdict(int)
        for u, v in self.arcs:
            bal[u] += 1
            bal[v] -= 1
        return all(b == 0 for b in bal.values())

    @property
    def is_connected(self) -> bool:
        verts = self.vertex_set
        if not verts:
            return False
        return len(_weak_components(self.arcs)) == 1


def _weak_components(arcs: Iterable[Arc]) -> list[tuple[frozenset[int], list[Arc]]]:
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    arcs = list(arcs)
    for u, v in arcs:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, tuple[set, list]] = {}
    for u, v in arcs:
        r = find(u)
        g = groups.setdefault(r, (set(), []))
        g[0].update((u, v))
        g[1].append((u, v))
    return [(frozenset(vs), a) for r, (vs, a) in sorted(groups.items())]


def hierholzer(B: BalancedSubdigraph | Iterable[Arc], start: int) -> ClosedDitrail:
    """Euler circuit of a connected balanced arc set, from ``start``."""
    if not isinstance(B, BalancedSubdigraph):
        B = BalancedSubdigraph(B)
    if not B.arcs:
        raise ContractViolation("empty arc set has no Euler circuit")
    if not B.is_balanced:
        raise ContractViolation("arc set is not balanced")
    if not B.is_connected:
        raise ContractViolation("arc set is not connected")
    if start not in B.vertex_set:
        raise ContractViolation(f"start vertex {start} is not incident to the arc set")
    out: dict[int, list[int]] = defaultdict(list)
    for u, v in sorted(B.arcs, reverse=True):
        out[u].append(v)
    stack = [start]
    circuit = []
    while stack:
        v = stack[-1]
        if out[v]:
            stack.append(out[v].pop())
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return ClosedDitrail(tuple(circuit))


# ---------------------------------------------------------------------------
# Closed ditrail through W


def _check_targets(D: Digraph, W) -> frozenset[int]:
    return D.check_vertex_set(W, nonempty=True)


def closed_ditrail_through(D: Digraph, W, budget: Budget | int | None = None,
                           method: str = "dfs") -> ClosedDitrail | None:
    """A closed ditrail of ``D`` whose vertex set contains ``W``, or None.

    Exact; exponential in the worst case.
    """
    W = _check_targets(D, W)
    budget = as_budget(budget)
    if method == "dfs":
        return _closed_dfs(D, W, budget)
    if method == "subset":
        return _closed_subset(D, W, budget)
    raise InputError(f"unknown method {method!r}")


def _closed_dfs(D: Digraph, W: frozenset[int], budget: Budget) -> ClosedDitrail | None:
    # Every arc of a closed ditrail lies on a dicycle, so the trail stays
    # inside one strong component.
    scc = strong_components(D).component_of
    comps = {scc[w] for w in W}
    if len(comps) != 1:
        return None
    c = comps.pop()
    arcs = [a for a in D.sorted_arcs() if scc[a[0]] == c and scc[a[1]] == c]
    if not arcs:
        return None

    out_arcs = defaultdict(list)
    in_arcs = defaultdict(list)
    for i, (u, v) in enumerate(arcs):
        out_arcs[u].append((i, v))
        in_arcs[v].append((i, u))
    w0 = min(W)
    need = 0
    for w in W:
        need |= 1 << w

    def reach(src, used, adj):
        seen = 1 << src
        frontier = [src]
        while frontier:
            v = frontier.pop()
            for i, w in adj[v]:
                if not (used >> i) & 1 and not (seen >> w) & 1:
                    seen |= 1 << w
                    frontier.append(w)
        return seen

    failed = set()

    def go(v, used, seen):
        budget.tick()
        key = (v, used)
        if key in failed:
            return None
        rem = need & ~seen
        fwd = reach(v, used, out_arcs)
        back = reach(w0, used, in_arcs)
        if rem & ~fwd or rem & ~back or not (fwd >> w0) & 1 or not (back >> v) & 1:
            failed.add(key)
            return None
        for i, h in out_arcs[v]:
            if (used >> i) & 1:
                continue
            nseen = seen | (1 << h)
            if h == w0 and (nseen & need) == need:
                return [h]
            tail = go(h, used | (1 << i), nseen)
            if tail is not None:
                return [h] + tail
        failed.add(key)
        return None

    path = go(w0, 0, 1 << w0)
    if path is None:
        return None
    return ClosedDitrail((w0, *path))


def _closed_subset(D: Digraph, W: frozenset[int], budget: Budget) -> ClosedDitrail | None:
    arcs = list(D.sorted_arcs())
    n = D.n
    diff = [0] * n
    rem_out = [0] * n
    rem_in = [0] * n
    touched = [0] * n
    for u, v in arcs:
        rem_out[u] += 1
        rem_in[v] += 1
    chosen: list[Arc] = []

    def ok(x):
        if not (diff[x] - rem_in[x] <= 0 <= diff[x] + rem_out[x]):
            return False
        if x in W and touched[x] == 0 and rem_in[x] + rem_out[x] == 0:
            return False
        return True

    def leaf():
        for verts, comp_arcs in _weak_components(chosen):
            if W <= verts:
                return comp_arcs
        return None

    def rec(i):
        budget.tick()
        if i == len(arcs):
            return leaf()
        u, v = arcs[i]
        rem_out[u] -= 1
        rem_in[v] -= 1
        # include
        diff[u] += 1
        diff[v] -= 1
        touched[u] += 1
        touched[v] += 1
        chosen.append((u, v))
        if ok(u) and ok(v):
            found = rec(i + 1)
            if found is not None:
                return found
        chosen.pop()
        diff[u] -= 1
        diff[v] += 1
        touched[u] -= 1
        touched[v] -= 1
        # exclude
        found = None
        if ok(u) and ok(v):
            found = rec(i + 1)
        rem_out[u] += 1
        rem_in[v] += 1
        return found

    comp = rec(0)
    if comp is None:
        return None
    return hierholzer(comp, min(W))


def is_closed_trailable(D: Digraph, S, budget: Budget | int | None = None) -> bool:
    return closed_ditrail_through(D, S, budget) is not None


def is_supereulerian(D: Digraph, budget: Budget | int | None = None) -> bool:
    if D.n == 0:
        raise InputError("empty digraph")
    return closed_ditrail_through(D, range(D.n), budget) is not None


class StrictStrongWitness(NamedTuple):
    u: int
    v: int
    trail: ClosedDitrail


def strictly_strong_witness(D: Digraph, S, budget: Budget | int | None = None
                            ) -> StrictStrongWitness | None:
    """First nonadjacent pair of ``S`` (lexicographic) sharing a closed ditrail."""
    S = D.check_vertex_set(S)
    if len(S) < 2:
        raise InputError("S-strict strength needs |S| >= 2")
    budget = as_budget(budget)
    inconclusive = False
    for u, v in nonadjacent_pairs(D, S):
        try:
            Q = closed_ditrail_through(D, (u, v), budget)
        except BudgetExhausted:
            inconclusive = True
            break
        if Q is not None:
            return StrictStrongWitness(u, v, Q)
    if inconclusive:
        raise BudgetExhausted(budget.limit)
    return None


def is_S_strictly_strong(D: Digraph, S, budget: Budget | int | None = None) -> bool:
    return strictly_strong_witness(D, S, budget) is not None


# ---------------------------------------------------------------------------
# Dicycles and vertex-set-constrained ditrails


def dicycle_through(D: Digraph, S, budget: Budget | int | None = None) -> ClosedDitrail | None:
    """A simple directed cycle containing every vertex of ``S``, or None."""
    S = _check_targets(D, S)
    budget = as_budget(budget)
    scc = strong_components(D).component_of
    if len({scc[s] for s in S}) != 1:
        return None
    s0 = min(S)
    need = 0
    for s in S:
        need |= 1 << s
    succ = [sorted(D.out_neighbors(v)) for v in range(D.n)]
    pred = [sorted(D.in_neighbors(v)) for v in range(D.n)]
    failed = set()

    def reach(src, visited, adj):
        # through vertices not yet on the path; s0 may be entered
        seen = 1 << src
        frontier = [src]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if (seen >> w) & 1:
                    continue
                if (visited >> w) & 1 and w != s0:
                    continue
                seen |= 1 << w
                if w != s0:
                    frontier.append(w)
        return seen

    def go(v, visited, depth):
        budget.tick()
        key = (v, visited)
        if key in failed:
            return None
        rem = need & ~visited
        fwd = reach(v, visited, succ)
        back = reach(s0, visited, pred) if rem else 0
        if rem & ~fwd or (rem and rem & ~back) or not (fwd >> s0) & 1 and v != s0:
            failed.add(key)
            return None
        for w in succ[v]:
            if w == s0:
                if depth >= 1 and not rem:
                    return [w]
                continue
            if (visited >> w) & 1:
                continue
            tail = go(w, visited | (1 << w), depth + 1)
            if tail is not None:
                return [w] + tail
        failed.add(key)
        return None

    path = go(s0, 1 << s0, 0)
    if path is None:
        return None
    return ClosedDitrail((s0, *path))


def ditrail_with_vertex_set(D: Digraph, start: int, end: int, vertex_set,
                            budget: Budget | int | None = None,
                            forbidden: Iterable[Arc] = ()) -> Ditrail | None:
    """A ``(start, end)``-ditrail whose vertex set is exactly ``vertex_set``.

    Arcs in ``forbidden`` are not used.
    """
    X = D.check_vertex_set(vertex_set)
    if start not in X or end not in X:
        raise InputError("start and end must belong to the vertex set")
    budget = as_budget(budget)
    if X == {start} and start == end:
        return Ditrail((start,))
    banned = set(forbidden)
    arcs = [a for a in D.sorted_arcs() if a[0] in X and a[1] in X and a not in banned]
    out_arcs = defaultdict(list)
    in_arcs = defaultdict(list)
    for i, (u, v) in enumerate(arcs):
        out_arcs[u].append((i, v))
        in_arcs[v].append((i, u))
    need = 0
    for x in X:
        need |= 1 << x

    def reach(src, used, adj):
        seen = 1 << src
        frontier = [src]
        while frontier:
            v = frontier.pop()
            for i, w in adj[v]:
                if not (used >> i) & 1 and not (seen >> w) & 1:
                    seen |= 1 << w
                    frontier.append(w)
        return seen

    failed = set()

    def go(v, used, seen):
        budget.tick()
        if v == end and seen == need and used:
            return []
        key = (v, used)
        if key in failed:
            return None
        rem = need & ~seen
        fwd = reach(v, used, out_arcs)
        back = reach(end, used, in_arcs)
        if rem & ~fwd or rem & ~back or not (fwd >> end) & 1:
            failed.add(key)
            return None
        for i, h in out_arcs[v]:
            if (used >> i) & 1:
                continue
            tail = go(h, used | (1 << i), seen | (1 << h))
            if tail is not None:
                return [h] + tail
        failed.add(key)
        return None

    path = go(start, 0, 1 << start)
    if path is None:
        return None
    return Ditrail((start, *path))


def lemma21_bound_holds(D: Digraph, T: Ditrail, x: int,
                        budget: Budget | int | None = None) -> bool:
    """No ``(u1, uh)``-ditrail on ``V(T) + x``  implies  ``d_T(x) <= |V(T)|``.

    Returns whether that implication holds for this ``(D, T, x)``.
    """
    D.check_vertex(x)
    if x in T.vertex_set:
        return True
    bound = len(T.vertex_set)
    if restricted_degree(D, x, T).total <= bound:
        return True
    other = ditrail_with_vertex_set(D, T.start, T.end, T.vertex_set | {x}, budget)
    return other is not None
