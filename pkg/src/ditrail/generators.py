"""Seeded instance generation, hypothesis-targeted sampling and tightness hunts.

All randomness flows from ``random.Random(seed)``; the same ``GenSpec``
always produces the same stream.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass, field, replace

from .budget import Budget
from .connectivity import reachable, strong_components
from .digraph import Digraph, induced, nonadjacent_pairs
from .errors import BudgetExhausted, InputError
from .theorems import (
    CYCLABILITY,
    DEGREE_SUM,
    SEMIDEGREE,
    SEMIDEGREE_REFINED,
    SUPEREULERIAN_DEGREE,
    SUPEREULERIAN_LAMBDA,
    resolve_theorem,
    run_check,
)
from .trails import closed_ditrail_through, strictly_strong_witness

HYPOTHESES = (
    DEGREE_SUM, SEMIDEGREE_REFINED, SEMIDEGREE, CYCLABILITY,
    SUPEREULERIAN_DEGREE, SUPEREULERIAN_LAMBDA,
)

# shapes for the semi-degree samplers
RANDOM = "random"
TWO_CLIQUES = "two-cliques"
BIPARTITE = "bipartite"


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generation stream.

    ``s_size`` fixes ``|S|`` (default: random in ``[2, n]``).  With
    ``require_nonadjacent`` every emitted instance has at least one
    nonadjacent pair in ``S``, so the degree conditions are not vacuous.
    """

    n: int
    p: float = 0.5
    seed: int = 0
    target: str | None = None
    repair_budget: int = 200
    s_size: int | None = None
    require_nonadjacent: bool = False
    shape: str = RANDOM
    m: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise InputError(f"arc probability {self.p} outside [0, 1]")
        if self.target is not None:
            object.__setattr__(self, "target", resolve_theorem(self.target))
        if self.s_size is not None and not 1 <= self.s_size <= self.n:
            raise InputError("s_size must lie in [1, n]")


@dataclass
class SamplingStats:
    attempts: int = 0
    emitted: int = 0
    skipped: int = 0

    @property
    def emission_rate(self) -> float:
        return self.emitted / self.attempts if self.attempts else 0.0

    def as_dict(self) -> dict:
        return {"attempts": self.attempts, "emitted": self.emitted,
                "skipped": self.skipped, "emission_rate": self.emission_rate}


def _random_arcs(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]


def random_digraph(spec: GenSpec) -> Digraph:
    """Each ordered pair is an arc independently with probability ``p``."""
    return Digraph(spec.n, _random_arcs(spec.n, spec.p, random.Random(spec.seed)))


class _Repairer:
    """Adds arcs toward a hypothesis threshold."""

    def __init__(self, n: int, arcs: set, S: list[int], rng: random.Random,
                 require_nonadjacent: bool):
        self.n, self.arcs, self.S, self.rng = n, arcs, S, rng
        self.require_nonadjacent = require_nonadjacent

    def digraph(self) -> Digraph:
        return Digraph(self.n, self.arcs)

    def missing(self, u: int, out: bool, avoid=()) -> list[tuple[int, int]]:
        cands = []
        for w in range(self.n):
            if w == u or w in avoid:
                continue
            a = (u, w) if out else (w, u)
            if a not in self.arcs:
                cands.append(a)
        return cands

    def connect(self, D: Digraph, vertices) -> bool:
        """One arc making more of ``vertices`` mutually reachable."""
        vs = sorted(vertices)
        for a in vs:
            fwd = reachable(D, a)
            for b in vs:
                if b not in fwd:
                    # arc from something reachable from a to something reaching b
                    src = sorted(fwd)
                    dst = sorted(reachable(D, b, reverse=True))
                    pairs = [(x, y) for x in src for y in dst if x != y and (x, y) not in self.arcs]
                    pairs = [pr for pr in pairs if not self._kills_last_pair(pr)] or pairs
                    if not pairs:
                        return False
                    self.arcs.add(self.rng.choice(pairs))
                    return True
        return False

    def _kills_last_pair(self, arc) -> bool:
        if not self.require_nonadjacent:
            return False
        u, v = arc
        if u not in self.S or v not in self.S or (v, u) in self.arcs:
            return False
        pairs = nonadjacent_pairs(self.digraph(), self.S)
        return pairs == [tuple(sorted(arc))]

    def raise_pair(self, D: Digraph, threshold: int) -> bool:
        """Increase the degree sum of the worst nonadjacent ``S``-pair."""
        pairs = nonadjacent_pairs(D, self.S)
        if not pairs:
            return False
        worst = min(pairs, key=lambda pr: (_deg(D, pr[0]) + _deg(D, pr[1]), pr))
        if _deg(D, worst[0]) + _deg(D, worst[1]) >= threshold:
            return False
        u, v = worst
        options = []
        if not self.require_nonadjacent or len(pairs) > 1:
            options.append(self.rng.choice([(u, v), (v, u)]))
        for x in (u, v):
            other = v if x == u else u
            options += self.missing(x, True, avoid=(other,))
            options += self.missing(x, False, avoid=(other,))
        if not options:
            return False
        self.arcs.add(self.rng.choice(options))
        return True

    def raise_semidegree(self, H: Digraph, inside: list[int]) -> bool:
        """Add an arc inside ``inside`` at a vertex of minimum semi-degree."""
        low = min(range(H.n), key=lambda v: (min(len(H.in_neighbors(v)), len(H.out_neighbors(v))), v))
        v = inside[low]
        out_deficient = len(H.out_neighbors(low)) <= len(H.in_neighbors(low))
        cands = [a for a in self.missing(v, out_deficient) if a[0] in inside and a[1] in inside]
        if not cands:
            cands = [a for a in self.missing(v, not out_deficient) if a[0] in inside and a[1] in inside]
        if not cands:
            return False
        self.arcs.add(self.rng.choice(cands))
        return True


def _deg(D: Digraph, v: int) -> int:
    return len(D.in_neighbors(v)) + len(D.out_neighbors(v))


def _draw_S(spec: GenSpec, rng: random.Random) -> list[int]:
    n = spec.n
    if spec.target in (SUPEREULERIAN_DEGREE, SUPEREULERIAN_LAMBDA):
        return list(range(n))
    k = spec.s_size if spec.s_size is not None else rng.randint(min(2, n), n)
    return sorted(rng.sample(range(n), k))


def _attempt(spec: GenSpec, rng: random.Random):
    """One candidate (D, S) for ``spec.target``, repaired; None on failure."""
    n, target = spec.n, spec.target
    if target in (SEMIDEGREE, SEMIDEGREE_REFINED) and spec.shape != RANDOM:
        return _structured(spec, rng)
    arcs = set(_random_arcs(n, spec.p, rng))
    S = _draw_S(spec, rng)
    rep = _Repairer(n, arcs, S, rng, spec.require_nonadjacent)
    for _ in range(spec.repair_budget + 1):
        D = rep.digraph()
        if spec.require_nonadjacent and not nonadjacent_pairs(D, S):
            return None
        report = run_check(target, D, S, budget=20000)
        if report.holds:
            return D, frozenset(S)
        if not _repair_step(rep, D, S, target, report):
            return None
    return None


def _repair_step(rep: _Repairer, D: Digraph, S: list[int], target: str, report) -> bool:
    d = report.diagnostics
    if target in (DEGREE_SUM, CYCLABILITY, SUPEREULERIAN_DEGREE):
        strong_ok = d.get("strong", d.get("s_strong"))
        if not strong_ok or not d.get("singleton_on_cycle", True):
            verts = range(D.n) if target == SUPEREULERIAN_DEGREE else S
            if len(S) == 1:
                s = S[0]
                cands = [(w, s) for w in reachable(D, s) if w != s and (w, s) not in rep.arcs]
                cands += [(s, w) for w in range(D.n) if w != s and (s, w) not in rep.arcs]
                rep.arcs.add(rep.rng.choice(cands))
                return True
            return rep.connect(D, verts)
        threshold = d["threshold"]
        return rep.raise_pair(D, threshold)
    if target == SUPEREULERIAN_LAMBDA:
        if not d["strong"]:
            return rep.connect(D, range(D.n))
        H = D
        return rep.raise_semidegree(H, list(range(D.n))) or _add_any(rep)
    if target in (SEMIDEGREE, SEMIDEGREE_REFINED):
        H = induced(D, S)
        if not d["degree_ok"]:
            return rep.raise_semidegree(H, S)
        # degree part holds; the strict-strength part failed and adding
        # arcs inside S cannot create a nonadjacent pair, so add outside S
        outside = [v for v in range(D.n) if v not in S]
        if not outside:
            return False
        cands = [(a, b) for a in range(D.n) for b in range(D.n)
                 if a != b and (a, b) not in rep.arcs and (a in outside or b in outside)]
        if not cands:
            return False
        rep.arcs.add(rep.rng.choice(cands))
        return True
    raise InputError(f"unknown target {target!r}")


def _add_any(rep: _Repairer) -> bool:
    cands = [(a, b) for a in range(rep.n) for b in range(rep.n) if a != b and (a, b) not in rep.arcs]
    if not cands:
        return False
    rep.arcs.add(rep.rng.choice(cands))
    return True


def _structured(spec: GenSpec, rng: random.Random):
    """Semi-degree instances built around a known matching structure.

    ``two-cliques``: ``D<S>`` is two disjoint copies of ``K*_{m+1}`` and the
    remaining vertices carry random arcs (repaired until some cross pair
    shares a closed ditrail).  ``bipartite``: ``S`` splits into ``m``
    hubs joined both ways to ``|S| - m`` independent vertices, plus random
    arcs among the hubs.
    """
    n = spec.n
    m = spec.m if spec.m is not None else 2
    if spec.shape == TWO_CLIQUES:
        if m % 2 or m < 2 or 2 * (m + 1) >= n:
            return None
        verts = list(range(n))
        rng.shuffle(verts)
        A, B = sorted(verts[:m + 1]), sorted(verts[m + 1:2 * m + 2])
        S = sorted(A + B)
        arcs = {(a, b) for comp in (A, B) for a in comp for b in comp if a != b}
        others = [v for v in range(n) if v not in S]
        for u in range(n):
            for v in range(n):
                if u != v and (u in others or v in others) and rng.random() < spec.p:
                    arcs.add((u, v))
        for _ in range(spec.repair_budget + 1):
            D = Digraph(n, arcs)
            try:
                w = strictly_strong_witness(D, S, budget=20000)
            except BudgetExhausted:
                return None
            if w is not None:
                return D, frozenset(S)
            cands = [(u, v) for u in range(n) for v in range(n)
                     if u != v and (u, v) not in arcs and (u in others or v in others)]
            if not cands:
                return None
            arcs.add(rng.choice(cands))
        return None
    if spec.shape == BIPARTITE:
        if m + 2 > n:
            return None
        k = spec.s_size if spec.s_size is not None else rng.randint(m + 2, n)
        if k > n or k < m + 2:
            return None
        verts = list(range(n))
        rng.shuffle(verts)
        S = verts[:k]
        hubs, leaves = S[:m], S[m:]
        arcs = {(h, x) for h in hubs for x in leaves} | {(x, h) for h in hubs for x in leaves}
        for a in hubs:
            for b in hubs:
                if a != b and rng.random() < spec.p:
                    arcs.add((a, b))
        others = [v for v in range(n) if v not in S]
        for u in range(n):
            for v in range(n):
                if u != v and (u in others or v in others) and rng.random() < spec.p:
                    arcs.add((u, v))
        D = Digraph(n, arcs)
        report = run_check(spec.target, D, S, budget=20000)
        return (D, frozenset(S)) if report.holds else None
    raise InputError(f"unknown shape {spec.shape!r}")


def sample_satisfying(hypothesis: str, spec: GenSpec, count: int | None = None,
                      stats: SamplingStats | None = None,
                      max_attempts: int | None = None) -> Iterator[tuple[Digraph, frozenset[int]]]:
    """Stream ``(D, S)`` pairs that pass the checker for ``hypothesis``.

    Stops after ``count`` emissions or ``max_attempts`` attempts (either may
    be None).  ``stats`` is updated in place.
    """
    hypothesis = resolve_theorem(hypothesis)
    spec = replace(spec, target=hypothesis)
    stats = stats if stats is not None else SamplingStats()
    if max_attempts is None and count is None:
        max_attempts = 1000
    rng = random.Random(spec.seed)
    emitted = attempts = 0
    while (count is None or emitted < count) and (
            max_attempts is None or attempts < max_attempts):
        attempts += 1
        stats.attempts += 1
        try:
            got = _attempt(spec, rng)
            ok = got is not None and run_check(hypothesis, *got, budget=20000).holds
        except BudgetExhausted:
            ok = False
        if not ok:
            stats.skipped += 1
            continue
        D, S = got
        emitted += 1
        stats.emitted += 1
        yield D, S


# ---------------------------------------------------------------------------
# Tightness hunt


@dataclass
class HuntReport:
    findings: list[dict] = field(default_factory=list)
    candidates: int = 0
    on_boundary: int = 0
    inconclusive: int = 0
    rejected_by_audit: int = 0

    def as_dict(self) -> dict:
        return {
            "findings": self.findings,
            "stats": {
                "candidates": self.candidates,
                "on_boundary": self.on_boundary,
                "inconclusive": self.inconclusive,
                "rejected_by_audit": self.rejected_by_audit,
            },
        }


def boundary_audit(D: Digraph, S) -> dict:
    """Degree facts of a hunt candidate, recomputed from scratch."""
    n = D.n
    pairs = nonadjacent_pairs(D, S)
    sums = [_deg(D, u) + _deg(D, v) for u, v in pairs]
    comp = strong_components(D).component_of
    return {
        "n": n,
        "s_strong": len({comp[v] for v in S}) == 1,
        "min_pair_degree_sum": min(sums) if sums else None,
        "on_boundary": bool(sums) and min(sums) == 2 * n - 4,
    }


def _hunt_candidate(n: int, rng: random.Random, repair_budget: int):
    S = sorted(rng.sample(range(n), rng.randint(2, n)))
    arcs = set(_random_arcs(n, rng.choice([0.4, 0.55, 0.7]), rng))
    rep = _Repairer(n, arcs, S, rng, require_nonadjacent=True)
    for _ in range(repair_budget):
        D = rep.digraph()
        audit = boundary_audit(D, S)
        if audit["min_pair_degree_sum"] is None:
            return None
        if not audit["s_strong"]:
            if not rep.connect(D, S):
                return None
            continue
        if audit["min_pair_degree_sum"] >= 2 * n - 4:
            return D, S
        if not rep.raise_pair(D, 2 * n - 4):
            return None
    return None


def _hunt_one(task) -> tuple[str, dict | None]:
    """Outcome of candidate ``index``: seeded by ``(seed, index)`` alone."""
    ns, seed, index, oracle_budget, repair_budget = task
    rng = random.Random(f"{seed}:{index}")
    n = rng.choice(ns)
    got = _hunt_candidate(n, rng, repair_budget)
    if got is None:
        return "miss", None
    D, S = got
    audit = boundary_audit(D, S)
    if not audit["on_boundary"]:
        low = audit["min_pair_degree_sum"]
        return ("rejected" if low is not None and low >= 2 * n - 3 else "miss"), None
    try:
        if closed_ditrail_through(D, S, Budget(oracle_budget)) is not None:
            return "boundary", None
        second = closed_ditrail_through(D, S, Budget(oracle_budget), method="subset")
    except BudgetExhausted:
        return "inconclusive", None
    if second is not None:
        raise AssertionError("closed-ditrail oracles disagree on a hunt candidate")
    return "boundary", _record(D, S, audit)


def hunt_tightness(n_range, budget: int, seed: int = 0, oracle_budget: int = 200000,
                   repair_budget: int = 60, jobs: int = 1) -> HuntReport:
    """Look for ``S``-strong instances whose minimum nonadjacent ``S``-pair
    degree sum is exactly ``2n - 4`` and whose ``S`` is not closed-trailable.

    ``budget`` is the number of candidates drawn.  Each candidate is seeded
    independently, so the report does not depend on ``jobs``.  Findings are
    confirmed by both exact oracles; an empty report asserts nothing.
    """
    report = HuntReport()
    if budget <= 0:
        return report
    ns = list(n_range)
    if not ns:
        raise InputError("empty n range")
    if min(ns) < 2:
        raise InputError("hunt needs n >= 2")
    tasks = [(ns, seed, i, oracle_budget, repair_budget) for i in range(budget)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_hunt_one, tasks, chunksize=max(1, budget // (4 * jobs))))
    else:
        outcomes = [_hunt_one(t) for t in tasks]
    for kind, finding in outcomes:
        report.candidates += 1
        if kind == "rejected":
            report.rejected_by_audit += 1
        elif kind == "inconclusive":
            report.on_boundary += 1
            report.inconclusive += 1
        elif kind == "boundary":
            report.on_boundary += 1
            if finding is not None:
                report.findings.append(finding)
    return report


def _record(D: Digraph, S, audit: dict) -> dict | None:
    # audit gate: a finding must sit strictly below the 2n-3 threshold
    again = boundary_audit(D, S)
    if again != audit or not again["on_boundary"] or not again["s_strong"]:
        return None
    return {
        "n": D.n,
        "arcs": [list(a) for a in D.sorted_arcs()],
        "S": sorted(S),
        "min_pair_degree_sum": again["min_pair_degree_sum"],
        "threshold": 2 * D.n - 3,
    }

