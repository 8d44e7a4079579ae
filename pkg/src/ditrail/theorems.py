"""Hypothesis checkers for the sufficient conditions, and certificate checks.

Each checker returns a :class:`HypothesisReport` whose diagnostics carry
every quantity needed to re-derive the verdict.  The conclusions are then
confirmed (or refuted) by the exact oracles in :func:`verify_certificate`.

Condition ids (``lambda-matching`` is accepted for ``supereulerian-lambda``):

``degree-sum``
    ``S``-strong and ``d(u) + d(v) >= 2n - 3`` for nonadjacent ``u, v`` of
    ``S``; concludes ``S`` closed-trailable.
``semidegree-matching``
    ``S``-strictly strong and ``delta0(D<S>) >= alpha'(D<S>) > 0``;
    concludes ``S`` closed-trailable.
``semidegree-matching-refined``
    as above, but strict strength is only demanded when a maximum
    matching of ``D<S>`` leaves exactly two vertices ``x, x'`` unmatched
    and ``|M_x| = m/2`` or ``|M_x'| = m/2``.
``cyclability``
    ``S``-strong and ``d(u) + d(v) >= 2n - 1``; concludes a dicycle through ``S``.
``supereulerian-degree``
    strong and ``d(u) + d(v) >= 2n - 3`` over all nonadjacent pairs.
``supereulerian-lambda``
    strong and ``lambda(D) >= alpha'(D)``.

For ``|S| = 1`` the ``S``-strong condition is vacuous while the conclusions
still need a closed ditrail, so the degree checkers additionally demand
that the single vertex lie in a nontrivial strong component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .budget import Budget, as_budget
from .connectivity import arc_strong_connectivity, is_strong, strong_components
from .digraph import (
    Digraph,
    digraph_sha256,
    format_digraph,
    induced,
    min_semi_degree,
    nonadjacent_pairs,
    underlying_graph,
)
from .errors import InputError, TheoremViolation
from .matching import digraph_matching, maximum_matching, special_case_components
from .trails import ClosedDitrail, closed_ditrail_through, dicycle_through, strictly_strong_witness
from .validator import validate_certificate

DEGREE_SUM = "degree-sum"
SEMIDEGREE = "semidegree-matching"
SEMIDEGREE_REFINED = "semidegree-matching-refined"
CYCLABILITY = "cyclability"
SUPEREULERIAN_DEGREE = "supereulerian-degree"
SUPEREULERIAN_LAMBDA = "supereulerian-lambda"

THEOREMS = (
    DEGREE_SUM,
    SEMIDEGREE,
    SEMIDEGREE_REFINED,
    CYCLABILITY,
    SUPEREULERIAN_DEGREE,
    SUPEREULERIAN_LAMBDA,
)

ALIASES = {
    "lambda-matching": SUPEREULERIAN_LAMBDA,
    "degree-sum-spanning": SUPEREULERIAN_DEGREE,
}


def resolve_theorem(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in THEOREMS:
        known = ", ".join(THEOREMS + tuple(ALIASES))
        raise InputError(f"unknown theorem id {name!r}; choose from {known}")
    return name


@dataclass
class HypothesisReport:
    theorem: str
    holds: bool
    diagnostics: dict = field(default_factory=dict)
    S: frozenset[int] = frozenset()

    def as_dict(self) -> dict:
        return {"id": self.theorem, "holds": self.holds, "diagnostics": self.diagnostics}


@dataclass
class Certificate:
    theorem: str
    digraph_hash: str
    S: frozenset[int]
    witness: ClosedDitrail
    kind: str = "closed-ditrail"

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "kind": self.kind,
            "vertices": list(self.witness.vertices),
            "arc_count": self.witness.length,
            "S": sorted(self.S),
        }


def _degree(D: Digraph, v: int) -> int:
    return len(D.in_neighbors(v)) + len(D.out_neighbors(v))


def _degree_condition(D: Digraph, S: frozenset[int], threshold: int) -> dict:
    pairs = nonadjacent_pairs(D, S)
    sums = [(_degree(D, u) + _degree(D, v), (u, v)) for u, v in pairs]
    failing = [p for s, p in sums if s < threshold]
    out = {
        "n": D.n,
        "threshold": threshold,
        "nonadjacent_pairs": len(pairs),
        "failing_pairs": len(failing),
        "ok": not failing,
    }
    if sums:
        worst, pair = min(sums)
        out["min_pair"] = list(pair)
        out["min_pair_degree_sum"] = worst
    if failing:
        u, v = failing[0]
        out["first_failing_pair"] = [u, v]
        out["first_failing_degree_sum"] = _degree(D, u) + _degree(D, v)
    return out


def _strong_condition(D: Digraph, S: frozenset[int]) -> tuple[bool, dict]:
    comp = strong_components(D).component_of
    ids = {comp[v] for v in S}
    ok = len(ids) == 1
    diag = {"s_strong": ok, "strong_components_met": len(ids)}
    if len(S) == 1:
        c = ids.pop()
        size = sum(1 for k in comp if k == c)
        diag["singleton_on_cycle"] = size > 1
        ok = ok and size > 1
    return ok, diag


def _degree_check(theorem: str, D: Digraph, S, threshold: int) -> HypothesisReport:
    S = D.check_vertex_set(S, nonempty=True)
    strong_ok, diag = _strong_condition(D, S)
    deg = _degree_condition(D, S, threshold)
    diag.update(deg)
    return HypothesisReport(theorem, strong_ok and deg["ok"], diag, S)


def check_degree_sum_closed_trailable(D: Digraph, S) -> HypothesisReport:
    return _degree_check(DEGREE_SUM, D, S, 2 * D.n - 3)


def check_cyclability(D: Digraph, S) -> HypothesisReport:
    return _degree_check(CYCLABILITY, D, S, 2 * D.n - 1)


def check_supereulerian_degree(D: Digraph) -> HypothesisReport:
    if D.n < 2:
        raise InputError("need at least two vertices")
    V = frozenset(range(D.n))
    strong = is_strong(D)
    deg = _degree_condition(D, V, 2 * D.n - 3)
    diag = {"strong": strong, **deg}
    return HypothesisReport(SUPEREULERIAN_DEGREE, strong and deg["ok"], diag, V)


def check_supereulerian_lambda(D: Digraph) -> HypothesisReport:
    if D.n < 2:
        raise InputError("need at least two vertices")
    V = frozenset(range(D.n))
    strong = is_strong(D)
    lam = arc_strong_connectivity(D)
    alpha = maximum_matching(underlying_graph(D)).m
    diag = {"strong": strong, "lambda": lam, "matching_number": alpha}
    return HypothesisReport(SUPEREULERIAN_LAMBDA, strong and lam >= alpha, diag, V)


def check_semidegree_matching(D: Digraph, S, refined: bool = False,
                              budget: Budget | int | None = None) -> HypothesisReport:
    """Minimum semi-degree versus matching number inside ``D<S>``.

    ``refined=False`` demands strict strength outright; ``refined=True``
    only in the two-unmatched-vertex special case.  The strict-strength
    search is exact and may raise ``BudgetExhausted``.
    """
    S = D.check_vertex_set(S, nonempty=True)
    theorem = SEMIDEGREE_REFINED if refined else SEMIDEGREE
    H = induced(D, S)
    M = digraph_matching(H)
    m = M.m
    delta0 = min_semi_degree(H)
    diag: dict = {
        "variant": "refined" if refined else "strict",
        "min_semi_degree": delta0,
        "matching_number": m,
        "unmatched": sorted(H.origin[x] for x in range(H.n) if x not in M.vertex_set),
    }
    degree_ok = delta0 >= m > 0
    diag["degree_ok"] = degree_ok

    sc = special_case_components(H, M) if m > 0 else None
    diag["special_case"] = sc is not None
    if sc is not None:
        (x, Mx), (xp, Mxp) = sc
        diag["M_x_sizes"] = [len(Mx), len(Mxp)]

    need_strict = not refined or sc is not None
    diag["strictly_strong_required"] = need_strict
    strict_ok = True
    if need_strict and degree_ok:
        if len(S) < 2:
            strict_ok = False
            diag["strictly_strong"] = False
        else:
            w = strictly_strong_witness(D, S, budget)
            strict_ok = w is not None
            diag["strictly_strong"] = strict_ok
            if w is not None:
                diag["strictly_strong_pair"] = [w.u, w.v]
    return HypothesisReport(theorem, degree_ok and strict_ok, diag, S)


CHECKERS = {
    DEGREE_SUM: lambda D, S, budget=None: check_degree_sum_closed_trailable(D, S),
    SEMIDEGREE: lambda D, S, budget=None: check_semidegree_matching(D, S, False, budget),
    SEMIDEGREE_REFINED: lambda D, S, budget=None: check_semidegree_matching(D, S, True, budget),
    CYCLABILITY: lambda D, S, budget=None: check_cyclability(D, S),
    SUPEREULERIAN_DEGREE: lambda D, S, budget=None: check_supereulerian_degree(D),
    SUPEREULERIAN_LAMBDA: lambda D, S, budget=None: check_supereulerian_lambda(D),
}


def run_check(theorem: str, D: Digraph, S=None, budget: Budget | int | None = None) -> HypothesisReport:
    theorem = resolve_theorem(theorem)
    if S is None:
        S = range(D.n)
    return CHECKERS[theorem](D, S, budget)


def verify_certificate(D: Digraph, S, report: HypothesisReport,
                       budget: Budget | int | None = None) -> Certificate:
    """Run the exact oracle behind a holding hypothesis.

    Raises ``TheoremViolation`` if the oracle proves there is no witness,
    and lets ``BudgetExhausted`` through when it cannot decide.
    """
    if not report.holds:
        raise InputError("nothing to verify: the hypotheses do not hold")
    S = D.check_vertex_set(S, nonempty=True)
    if report.theorem in (SUPEREULERIAN_DEGREE, SUPEREULERIAN_LAMBDA):
        S = frozenset(range(D.n))
    budget = as_budget(budget)
    if report.theorem == CYCLABILITY:
        kind = "dicycle"
        witness = dicycle_through(D, S, budget)
    else:
        kind = "closed-ditrail"
        witness = closed_ditrail_through(D, S, budget)
    if witness is None:
        raise TheoremViolation(report.theorem, {
            "digraph": format_digraph(D, S),
            "diagnostics": report.diagnostics,
        })
    cert = Certificate(report.theorem, digraph_sha256(D), S, witness, kind)
    if not validate_certificate(D, S, cert):
        raise AssertionError("oracle returned a witness the validator rejects")
    return cert
