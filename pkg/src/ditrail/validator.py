"""Naive re-verification of artifacts against the bare definitions.

Nothing here calls into the search code.  Inputs may be trail objects or
plain vertex sequences; matchings may be ``Matching`` objects or plain
collections of pairs.
"""

from __future__ import annotations


def _vertex_seq(T):
    return list(getattr(T, "vertices", T))


def validate_trail(D, T, closed=None) -> bool:
    """Distinct arcs of ``D``, each starting where the previous one ended.

    ``closed=True`` additionally demands a closed trail of length >= 2;
    ``closed=False`` demands an open one; ``None`` accepts both.
    """
    try:
        seq = [int(v) for v in _vertex_seq(T)]
    except (TypeError, ValueError):
        return False
    if not seq:
        return False
    if any(not (0 <= v < D.n) for v in seq):
        return False
    steps = [(seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
    for a in steps:
        if a not in D.arcs:
            return False
    for i in range(len(steps)):
        for j in range(i + 1, len(steps)):
            if steps[i] == steps[j]:
                return False
    is_closed = len(steps) >= 2 and seq[0] == seq[-1]
    if closed is True and not is_closed:
        return False
    if closed is False and is_closed:
        return False
    return True


def validate_dicycle(D, C) -> bool:
    seq = _vertex_seq(C)
    if not validate_trail(D, seq, closed=True):
        return False
    inner = seq[:-1]
    return len(set(inner)) == len(inner)


def validate_matching(G, M) -> bool:
    """Edges of ``G``, pairwise vertex-disjoint.

    ``G`` is an undirected graph, or a digraph read through its underlying
    graph.
    """
    if hasattr(G, "has_edge"):
        has_edge = G.has_edge
    else:
        def has_edge(u, v):
            return (u, v) in G.arcs or (v, u) in G.arcs
    pairs = getattr(M, "edges", M)
    used = set()
    for e in pairs:
        u, v = tuple(e)
        if u == v or not has_edge(u, v):
            return False
        if u in used or v in used:
            return False
        used.add(u)
        used.add(v)
    witnesses = getattr(M, "witness", None)
    if witnesses:
        # witness arcs must be arcs of the digraph the matching lives in
        arcs = getattr(G, "arcs", None)
        for (u, v), a in witnesses.items():
            if set(a) != {u, v}:
                return False
            if arcs is not None and tuple(a) not in arcs:
                return False
    return True


def validate_certificate(D, S, C) -> bool:
    """``C`` is a closed ditrail of ``D`` passing through all of ``S``.

    ``C`` may be a trail, a vertex sequence, or a certificate object with a
    ``witness`` attribute.  Dicycle certificates are held to the stricter
    simple-cycle check.
    """
    kind = getattr(C, "kind", "closed-ditrail")
    witness = getattr(C, "witness", C)
    seq = _vertex_seq(witness)
    if kind == "dicycle":
        if not validate_dicycle(D, seq):
            return False
    elif not validate_trail(D, seq, closed=True):
        return False
    return set(S) <= set(seq)
