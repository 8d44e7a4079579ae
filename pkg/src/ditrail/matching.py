"""Maximum matchings in general graphs and the matching structure of ``D<S>``.

The blossom search follows Edmonds: grow an alternating forest from one
free root, shrink odd cycles into their base, stop at the first free vertex
reached.  If the search from a root fails it keeps failing after
augmentations elsewhere, so one pass over all roots yields a maximum
matching.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from .digraph import Arc, Digraph, UndirectedGraph, induced, min_semi_degree, underlying_graph
from .errors import InputError, LemmaViolation, PreconditionError

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edges; ``witness`` maps each edge to one arc realizing it."""

    edges: frozenset[Edge]
    witness: dict[Edge, Arc] = field(default_factory=dict, compare=False)

    def __init__(self, edges: Iterable[Iterable[int]] = (), witness=None):
        object.__setattr__(self, "edges", frozenset(_edge(*e) for e in edges))
        object.__setattr__(self, "witness", dict(witness or {}))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def mate(self, n: int) -> list[int]:
        mate = [-1] * n
        for u, v in self.edges:
            mate[u] = v
            mate[v] = u
        return mate


def _check_matching(G: UndirectedGraph, M: Matching) -> None:
    seen = set()
    for u, v in M.edges:
        if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
            raise InputError(f"{(u, v)} is not an edge of the graph")
        if u in seen or v in seen:
            raise InputError("matching edges share a vertex")
        seen.update((u, v))


def _search(G: UndirectedGraph, mate: list[int], root: int) -> list[int] | None:
    """Augmenting path from the free vertex ``root``, as a vertex list."""
    n = G.n
    adj = [sorted(G.adj(v)) for v in range(n)]
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    path = []
                    w = to
                    while True:
                        path.append(w)
                        pw = parent[w]
                        path.append(pw)
                        if mate[pw] == -1:
                            break
                        w = mate[pw]
                    path.reverse()
                    return path
                used[mate[to]] = True
                queue.append(mate[to])
    return None


def find_augmenting_path(G: UndirectedGraph, M: Matching) -> tuple[int, ...] | None:
    """An M-augmenting path, or None exactly when ``M`` is maximum."""
    _check_matching(G, M)
    mate = M.mate(G.n)
    for root in range(G.n):
        if mate[root] == -1 and G.adj(root):
            path = _search(G, mate, root)
            if path is not None:
                return tuple(path)
    return None


def maximum_matching(G: UndirectedGraph) -> Matching:
    mate = [-1] * G.n
    for root in range(G.n):
        if mate[root] != -1 or not G.adj(root):
            continue
        path = _search(G, mate, root)
        if path is None:
            continue
        for i in range(0, len(path), 2):
            a, b = path[i], path[i + 1]
            mate[a] = b
            mate[b] = a
    return Matching((v, mate[v]) for v in range(G.n) if mate[v] > v)


def digraph_matching(H: Digraph) -> Matching:
    """Maximum matching of ``UG(H)`` with the smallest realizing arc as witness."""
    M = maximum_matching(underlying_graph(H))
    witness = {}
    for u, v in M.edges:
        witness[(u, v)] = (u, v) if (u, v) in H.arcs else (v, u)
    return Matching(M.edges, witness)


def matching_number_digraph(D: Digraph, S) -> int:
    S = D.check_vertex_set(S, nonempty=True)
    return maximum_matching(underlying_graph(induced(D, S))).m


# ---------------------------------------------------------------------------
# Structure of a maximum matching of H = D<S> under degree constraints


def _unmatched(H: Digraph, M: Matching) -> frozenset[int]:
    return frozenset(range(H.n)) - M.vertex_set


def lemma31_check(H: Digraph, M: Matching, X=None) -> bool:
    """Degree witness of non-maximality.

    Hypotheses: ``m = |M| > 0``, ``X = V(H) - V(M)`` has ``|X| >= 2`` and
    every ``x`` in ``X`` has total degree ``>= 2m - 1`` in ``H``.  If some
    ``x'`` in ``X`` reaches ``2m + 1``, then ``M`` must admit an augmenting
    path; returns whether it does (True when no such ``x'`` exists).
    """
    G = underlying_graph(H)
    _check_matching(G, M)
    m = M.m
    if m == 0:
        raise PreconditionError("matching must be nonempty")
    free = _unmatched(H, M)
    if X is not None and frozenset(X) != free:
        raise PreconditionError("X must be the set of unmatched vertices")
    if len(free) < 2:
        raise PreconditionError("need at least two unmatched vertices")
    deg = {x: len(H.in_neighbors(x)) + len(H.out_neighbors(x)) for x in free}
    if any(d < 2 * m - 1 for d in deg.values()):
        raise PreconditionError("some unmatched vertex has degree below 2m-1")
    if not any(d >= 2 * m + 1 for d in deg.values()):
        return True
    return find_augmenting_path(G, M) is not None


@dataclass(frozen=True)
class Lemma32Structure:
    """Forced shape of ``H`` around a maximum matching.

    General case: ``labels[e] = (v(e), u(e))``.  Special case:
    ``special_case`` holds the two complete components and ``labels`` is
    None.
    """

    m: int
    X: frozenset[int]
    labels: dict[Edge, tuple[int, int]] | None = None
    independent_set: frozenset[int] | None = None
    special_case: tuple[frozenset[int], frozenset[int]] | None = None
    M_x: tuple[Edge, ...] | None = None
    M_x_prime: tuple[Edge, ...] | None = None

    def as_dict(self, origin=None) -> dict:
        o = (lambda v: v) if origin is None else (lambda v: origin[v])
        out = {"m": self.m, "X": sorted(o(x) for x in self.X)}
        if self.special_case is not None:
            out["special_case"] = [sorted(o(v) for v in c) for c in self.special_case]
        else:
            out["labels"] = [
                {"edge": [o(a), o(b)], "v": o(v), "u": o(u)}
                for (a, b), (v, u) in sorted(self.labels.items())
            ]
        return out


def incident_edges(H: Digraph, M: Matching, x: int) -> tuple[Edge, ...]:
    """Edges of ``M`` with at least one end adjacent to ``x``."""
    nb = H.neighbors(x)
    return tuple(sorted(e for e in M.edges if e[0] in nb or e[1] in nb))


def special_case_components(H: Digraph, M: Matching):
    """The two candidate components when ``|X| = 2`` and some ``|M_x| = m/2``.

    Returns ``((x, M_x), (x', M_x'))`` or None.  This only tests the
    triggering condition, not the complete-digraph conclusion.
    """
    m = M.m
    X = sorted(_unmatched(H, M))
    if m == 0 or len(X) != 2:
        return None
    x, xp = X
    Mx, Mxp = incident_edges(H, M, x), incident_edges(H, M, xp)
    if 2 * len(Mx) == m or 2 * len(Mxp) == m:
        return (x, Mx), (xp, Mxp)
    return None


def lemma32_analyze(H: Digraph, M: Matching) -> Lemma32Structure:
    G = underlying_graph(H)
    _check_matching(G, M)
    m = M.m
    if m == 0:
        raise PreconditionError("matching must be nonempty")
    if find_augmenting_path(G, M) is not None:
        raise PreconditionError("matching is not maximum")
    X = _unmatched(H, M)
    if len(X) < 2:
        raise PreconditionError("need at least two unmatched vertices")
    if min_semi_degree(H) < m:
        raise PreconditionError("minimum semi-degree below m")

    for x in sorted(X):
        dp, dm = len(H.out_neighbors(x)), len(H.in_neighbors(x))
        if dp != m or dm != m:
            raise LemmaViolation(f"unmatched vertex {x} has semi-degrees ({dp}, {dm}) != {m}")

    sc = special_case_components(H, M)
    if sc is not None:
        (x, Mx), (xp, Mxp) = sc
        A = frozenset(v for e in Mx for v in e) | {x}
        B = frozenset(v for e in Mxp for v in e) | {xp}
        for comp in (A, B):
            if len(comp) != m + 1:
                raise LemmaViolation(f"component {sorted(comp)} does not have m+1 vertices")
            for a in comp:
                for b in comp:
                    if a != b and (a, b) not in H.arcs:
                        raise LemmaViolation(f"arc {(a, b)} missing from component {sorted(comp)}")
        for a in A:
            if H.neighbors(a) & B:
                raise LemmaViolation(f"vertex {a} has a neighbour across the components")
        return Lemma32Structure(m=m, X=X, special_case=(A, B), M_x=Mx, M_x_prime=Mxp)

    labels = {}
    for e in sorted(M.edges):
        chosen = set()
        for x in sorted(X):
            both = [w for w in e if (w, x) in H.arcs and (x, w) in H.arcs]
            if len(both) != 1:
                raise LemmaViolation(
                    f"edge {e}: {len(both)} ends joined both ways to unmatched vertex {x}")
            chosen.add(both[0])
        if len(chosen) != 1:
            raise LemmaViolation(f"edge {e}: the doubly joined end depends on the unmatched vertex")
        v = chosen.pop()
        u = e[0] if v == e[1] else e[1]
        if H.neighbors(u) & X:
            raise LemmaViolation(f"edge {e}: end {u} has a neighbour among unmatched vertices")
        labels[e] = (v, u)

    U = frozenset(u for v, u in labels.values())
    V_ = [v for v, u in labels.values()]
    for u in U:
        if H.neighbors(u) & U:
            raise LemmaViolation(f"{u} has a neighbour in the set of u(e)")
        if len(H.out_neighbors(u)) != m or len(H.in_neighbors(u)) != m:
            raise LemmaViolation(f"u(e) = {u} does not have semi-degrees ({m}, {m})")
        for v in V_:
            if (u, v) not in H.arcs or (v, u) not in H.arcs:
                raise LemmaViolation(f"u(e) = {u} and v(e') = {v} are not joined both ways")
    return Lemma32Structure(m=m, X=X, labels=labels, independent_set=U)
