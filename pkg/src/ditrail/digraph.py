"""Strict digraphs on dense integer vertices, and their underlying graphs.

Vertices of a digraph with ``n`` vertices are ``0 .. n-1``.  Subdigraphs
built by :func:`induced` and :func:`arc_induced` are reindexed; the
``origin`` tuple records, for every new vertex, the vertex it came from in
the parent, so that witnesses can be translated back.
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable
from typing import NamedTuple

from .errors import InputError, ParseError

Arc = tuple[int, int]


class Degree(NamedTuple):
    in_deg: int
    out_deg: int
    total: int


class Digraph:
    """Immutable strict digraph: no loops, no parallel arcs.

    The opposite pair ``(u, v), (v, u)`` is allowed.
    """

    __slots__ = ("n", "arcs", "origin", "_out", "_in", "_sorted")

    def __init__(self, n: int, arcs: Iterable[Arc] = (), origin: Iterable[int] | None = None):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        arcset = set()
        for a in arcs:
            u, v = a
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc {a} has an endpoint outside [0, {n})")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            arcset.add((int(u), int(v)))
        out = [set() for _ in range(n)]
        inn = [set() for _ in range(n)]
        for u, v in arcset:
            out[u].add(v)
            inn[v].add(u)
        self.n = n
        self.arcs = frozenset(arcset)
        self.origin = tuple(range(n)) if origin is None else tuple(origin)
        if len(self.origin) != n:
            raise InputError("origin map must have one entry per vertex")
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inn)
        self._sorted = tuple(sorted(arcset))

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._out[v] | self._in[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> tuple[Arc, ...]:
        """Arcs in (tail, head) lexicographic order."""
        return self._sorted

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v) -> int:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InputError(f"vertex {v!r} not in [0, {self.n})")
        return v

    def check_vertex_set(self, X, *, nonempty: bool = False) -> frozenset[int]:
        xs = frozenset(self.check_vertex(v) for v in X)
        if nonempty and not xs:
            raise InputError("vertex set must be nonempty")
        return xs

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={list(self._sorted)})"


class UndirectedGraph:
    """Simple graph; edges are stored as ``(min, max)`` tuples."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        es = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {(u, v)} outside [0, {n})")
            es.add((min(u, v), max(u, v)))
        adj = [set() for _ in range(n)]
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(es)
        self._adj = tuple(frozenset(s) for s in adj)

    def adj(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={sorted(self.edges)})"


def degree_profile(D: Digraph, v: int) -> Degree:
    D.check_vertex(v)
    i, o = len(D.in_neighbors(v)), len(D.out_neighbors(v))
    return Degree(i, o, i + o)


def _vertex_part(D: Digraph, H) -> frozenset[int]:
    # H may be a vertex collection, a trail (anything with ``vertex_set``)
    # or a reindexed subdigraph of D.
    if isinstance(H, Digraph):
        return D.check_vertex_set(H.origin)
    if hasattr(H, "vertex_set"):
        return D.check_vertex_set(H.vertex_set)
    return D.check_vertex_set(H)


def restricted_degree(D: Digraph, v: int, H) -> Degree:
    """Degree of ``v`` counting only neighbours inside ``H`` (``v`` excluded)."""
    D.check_vertex(v)
    part = _vertex_part(D, H) - {v}
    i = len(D.in_neighbors(v) & part)
    o = len(D.out_neighbors(v) & part)
    return Degree(i, o, i + o)


def min_semi_degree(D: Digraph) -> int:
    if D.n == 0:
        raise InputError("minimum semi-degree of the empty digraph is undefined")
    return min(min(len(D.in_neighbors(v)), len(D.out_neighbors(v))) for v in D.vertices())


def induced(D: Digraph, X: Iterable[int]) -> Digraph:
    """Subdigraph induced by ``X``; new vertex ``i`` is the ``i``-th smallest of ``X``."""
    xs = sorted(D.check_vertex_set(X))
    index = {v: i for i, v in enumerate(xs)}
    arcs = [(index[u], index[v]) for u, v in D.arcs if u in index and v in index]
    return Digraph(len(xs), arcs, origin=(D.origin[v] for v in xs))


def arc_induced(D: Digraph, arcs: Iterable[Arc]) -> Digraph:
    chosen = set()
    for a in arcs:
        a = tuple(a)
        if a not in D.arcs:
            raise InputError(f"arc {a} is not an arc of the digraph")
        chosen.add(a)
    verts = sorted({v for a in chosen for v in a})
    index = {v: i for i, v in enumerate(verts)}
    return Digraph(
        len(verts),
        ((index[u], index[v]) for u, v in chosen),
        origin=(D.origin[v] for v in verts),
    )


def union(D1: Digraph, D2: Digraph) -> Digraph:
    """Union over the common index universe ``0 .. max(n1, n2)-1``."""
    return Digraph(max(D1.n, D2.n), D1.arcs | D2.arcs)


def underlying_graph(D: Digraph) -> UndirectedGraph:
    return UndirectedGraph(D.n, D.arcs)


def are_adjacent(D: Digraph, u: int, v: int) -> bool:
    D.check_vertex(u)
    D.check_vertex(v)
    if u == v:
        raise InputError("adjacency is only defined for distinct vertices")
    return (u, v) in D.arcs or (v, u) in D.arcs


def is_semicomplete(D: Digraph) -> bool:
    return all(
        len(D.neighbors(v)) == D.n - 1 for v in D.vertices()
    )


def nonadjacent_pairs(D: Digraph, S: Iterable[int]) -> list[tuple[int, int]]:
    """Pairs ``u < v`` of ``S`` joined by no arc, in lexicographic order."""
    ss = sorted(D.check_vertex_set(S))
    return [
        (u, v)
        for i, u in enumerate(ss)
        for v in ss[i + 1:]
        if v not in D.neighbors(u)
    ]


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise InputError("a directed cycle needs at least two vertices")
    return Digraph(n, ((i, (i + 1) % n) for i in range(n)))


# ---------------------------------------------------------------------------
# Text format
#
#   n m
#   tail head      (m lines, 0-based)
#   S: i j k       (optional)
#
# Lines starting with '#' are comments.


def parse_instance(text: str) -> tuple[Digraph, frozenset[int] | None]:
    """Parse the text format; returns the digraph and the ``S:`` set if given."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((lineno, line))
    if not lines:
        raise ParseError("empty instance")
    s_lines = [(no, ln) for no, ln in lines if ln.startswith("S:")]
    body = [(no, ln) for no, ln in lines if not ln.startswith("S:")]
    if len(s_lines) > 1:
        raise ParseError("more than one 'S:' line")
    if not body:
        raise ParseError("missing 'n m' header")

    lineno, header = body[0]
    n, m = _ints(header, 2, lineno)
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative counts")
    if len(body) - 1 != m:
        raise ParseError(f"header announces {m} arcs, found {len(body) - 1}")
    seen = set()
    for lineno, line in body[1:]:
        u, v = _ints(line, 2, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range [0, {n})")
        if u == v:
            raise ParseError(f"line {lineno}: loop at {u}")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate arc {u} {v}")
        seen.add((u, v))
    D = Digraph(n, seen)

    S = None
    if s_lines:
        lineno, line = s_lines[0]
        rest = line[2:].split()
        try:
            vals = [int(t) for t in rest]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer in S line") from None
        for v in vals:
            if not 0 <= v < n:
                raise ParseError(f"line {lineno}: S vertex {v} out of range")
        S = frozenset(vals)
    return D, S


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None


def parse_digraph(text: str) -> Digraph:
    return parse_instance(text)[0]


def format_digraph(D: Digraph, S: Iterable[int] | None = None) -> str:
    """Canonical text encoding: arcs sorted, ``S:`` line last when given."""
    out = [f"{D.n} {D.num_arcs}"]
    out.extend(f"{u} {v}" for u, v in D.sorted_arcs())
    if S is not None:
        out.append("S: " + " ".join(str(v) for v in sorted(S)))
    return "\n".join(out) + "\n"


def digraph_sha256(D: Digraph) -> str:
    return hashlib.sha256(format_digraph(D).encode()).hexdigest()
