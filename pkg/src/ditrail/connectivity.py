"""Strong components, S-strong connectivity and arc-strong connectivity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digraph import Digraph
from .errors import InputError


@dataclass(frozen=True)
class SccDecomposition:
    component_of: tuple[int, ...]
    component_count: int

    def members(self, c: int) -> frozenset[int]:
        return frozenset(v for v, k in enumerate(self.component_of) if k == c)

    def components(self) -> list[frozenset[int]]:
        return [self.members(c) for c in range(self.component_count)]


def strong_components(D: Digraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative.

    Components are numbered in the order Tarjan completes them, which is a
    reverse topological order of the condensation.
    """
    n = D.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    succ = [sorted(D.out_neighbors(v)) for v in range(n)]

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return SccDecomposition(tuple(comp), ncomp)


def is_strong(D: Digraph) -> bool:
    return D.n >= 1 and strong_components(D).component_count == 1


def is_S_strong(D: Digraph, S) -> bool:
    """True iff all of ``S`` lies in one strong component of ``D``."""
    S = D.check_vertex_set(S, nonempty=True)
    comp = strong_components(D).component_of
    return len({comp[v] for v in S}) == 1


def reachable(D: Digraph, source: int, reverse: bool = False) -> set[int]:
    nbrs = D.in_neighbors if reverse else D.out_neighbors
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in nbrs(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def max_arc_disjoint_paths(D: Digraph, s: int, t: int, cap: int | None = None) -> int:
    """Maximum number of arc-disjoint (s, t)-dipaths: unit-capacity max-flow.

    Stops early once ``cap`` paths are found.
    """
    if s == t:
        raise InputError("source and sink must differ")
    # residual[u][v] = remaining capacity on u -> v
    residual: dict[int, dict[int, int]] = {v: {} for v in range(D.n)}
    for u, v in D.arcs:
        residual[u][v] = residual[u].get(v, 0) + 1
        residual[v].setdefault(u, 0)
    flow = 0
    while cap is None or flow < cap:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v in sorted(residual[u]):
                if residual[u][v] > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            break
        v = t
        while parent[v] is not None:
            u = parent[v]
            residual[u][v] -= 1
            residual[v][u] += 1
            v = u
        flow += 1
    return flow


def arc_strong_connectivity(D: Digraph) -> int:
    """lambda(D), via flows between vertex 0 and every other vertex, both ways.

    Every arc cut separates vertex 0 from some vertex in one direction, so
    these 2(n-1) flows suffice.
    """
    if D.n < 2:
        raise InputError("arc-strong connectivity needs at least two vertices")
    best = min(min(len(D.out_neighbors(v)), len(D.in_neighbors(v))) for v in D.vertices())
    if best == 0:
        return 0
    for v in range(1, D.n):
        best = min(best, max_arc_disjoint_paths(D, 0, v, cap=best))
        if best == 0:
            break
        best = min(best, max_arc_disjoint_paths(D, v, 0, cap=best))
        if best == 0:
            break
    return best
