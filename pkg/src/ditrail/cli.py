"""Command-line entry point: ``ditrail {check,oracle,construct,gen,hunt}``.

Every subcommand except ``gen`` without ``--out`` prints one JSON report.
Exit codes: 0 for success or an inconclusive run (see ``status``), 1 when
a sufficient condition holds but the oracle finds no witness, 2 for input
errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .budget import Budget, default_limit
from .constructor import construct
from .digraph import Digraph, digraph_sha256, format_digraph, parse_instance
from .errors import BudgetExhausted, InputError, TheoremViolation
from .generators import GenSpec, SamplingStats, hunt_tightness, random_digraph, sample_satisfying
from .theorems import (
    THEOREMS,
    resolve_theorem,
    run_check,
    verify_certificate,
)
from .trails import closed_ditrail_through
from .validator import validate_certificate

log = logging.getLogger("ditrail")

DEFAULT_EXPANSIONS = 2_000_000

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

# stated in every oracle/construct result; matters when |S| = 1
CONVENTION = "closed ditrails have at least two arcs"


def _parse_s(raw: str) -> frozenset[int]:
    try:
        return frozenset(int(tok) for tok in raw.replace(",", " ").split())
    except ValueError:
        raise InputError(f"cannot parse S list {raw!r}") from None


def _load(args) -> tuple[Digraph, frozenset[int]]:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    D, S_file = parse_instance(text)
    S = S_file
    if args.s is not None:
        S = _parse_s(args.s)
        if S_file is not None and S != S_file:
            log.warning("inline --s %s overrides the S: line %s", sorted(S), sorted(S_file))
    if S is None:
        S = frozenset(range(D.n))
    return D, D.check_vertex_set(S, nonempty=True)


def _budget(args) -> Budget:
    limit = args.budget if args.budget is not None else default_limit(DEFAULT_EXPANSIONS)
    return Budget(limit)


def _report(subcommand: str, D: Digraph | None = None, S=None) -> dict:
    return {
        "version": __version__,
        "input_sha256": digraph_sha256(D) if D is not None else None,
        "subcommand": subcommand,
        "status": "ok",
        "S": sorted(S) if S is not None else None,
        "checks": [],
        "certificate": None,
        "moves": [],
        "timing_ms": None,
        "budget": {"expansions": 0, "exhausted": False},
    }


def _certificate(D: Digraph, S, trail, kind: str, theorem: str | None = None) -> dict:
    if not validate_certificate(D, S, trail):
        raise AssertionError("refusing to emit a certificate the validator rejects")
    return {
        "kind": kind,
        "theorem": theorem,
        "vertices": list(trail.vertices),
        "arc_count": trail.length,
        "witness": trail.to_text(),
    }


def cmd_check(args) -> tuple[dict, int]:
    D, S = _load(args)
    budget = _budget(args)
    report = _report("check", D, S)
    names = [resolve_theorem(t) for raw in (args.theorem or list(THEOREMS))
             for t in raw.split(",") if t]
    code = EXIT_OK
    for name in names:
        entry = {"id": name, "holds": None, "diagnostics": {}}
        report["checks"].append(entry)
        try:
            res = run_check(name, D, S, budget=budget)
        except BudgetExhausted:
            entry["diagnostics"] = {"inconclusive": True}
            report["status"] = "inconclusive"
            continue
        except InputError as exc:
            entry["holds"] = False
            entry["diagnostics"] = {"precondition_error": str(exc)}
            continue
        entry["holds"] = res.holds
        entry["diagnostics"] = res.diagnostics
        if not (args.verify and res.holds):
            continue
        try:
            cert = verify_certificate(D, S, res, budget)
        except BudgetExhausted:
            entry["diagnostics"]["verified"] = None
            report["status"] = "inconclusive"
            continue
        except TheoremViolation:
            entry["diagnostics"]["verified"] = False
            report["status"] = "violation"
            code = EXIT_VIOLATION
            continue
        entry["diagnostics"]["verified"] = True
        entry["diagnostics"]["witness"] = cert.witness.to_text()
        if report["certificate"] is None:
            report["certificate"] = _certificate(D, cert.S, cert.witness, cert.kind, name)
    report["budget"] = budget.as_dict()
    return report, code


def cmd_oracle(args) -> tuple[dict, int]:
    D, S = _load(args)
    budget = _budget(args)
    report = _report("oracle", D, S)
    try:
        trail = closed_ditrail_through(D, S, budget, method=args.method)
    except BudgetExhausted:
        report["status"] = "inconclusive"
        report["result"] = {"found": None, "witness": None, "method": args.method,
                            "convention": CONVENTION}
    else:
        report["status"] = "found" if trail is not None else "none"
        report["result"] = {
            "found": trail is not None,
            "witness": trail.to_text() if trail is not None else None,
            "method": args.method,
            "convention": CONVENTION,
        }
        if trail is not None:
            report["certificate"] = _certificate(D, S, trail, "closed-ditrail")
    report["budget"] = budget.as_dict()
    return report, EXIT_OK


def cmd_construct(args) -> tuple[dict, int]:
    D, S = _load(args)
    budget = _budget(args)
    report = _report("construct", D, S)
    res = construct(D, S, budget)
    report["status"] = res.status
    report["moves"] = res.moves
    report["result"] = {"fallback_used": res.fallback_used, "convention": CONVENTION}
    if res.trail is not None:
        report["certificate"] = _certificate(D, S, res.trail, "closed-ditrail")
    report["budget"] = budget.as_dict()
    return report, EXIT_OK


def _gen_instances(args, stats: SamplingStats):
    if args.target is None:
        for i in range(args.count):
            spec = GenSpec(args.n, args.p, args.seed + i)
            yield random_digraph(spec), None
        return
    spec = GenSpec(args.n, args.p, args.seed, s_size=args.s_size,
                   require_nonadjacent=args.require_nonadjacent,
                   shape=args.shape, m=args.m)
    attempts = args.max_attempts if args.max_attempts is not None else 1000 * args.count
    yield from sample_satisfying(args.target, spec, count=args.count, stats=stats,
                                 max_attempts=attempts)


def cmd_gen(args) -> tuple[dict | None, int]:
    stats = SamplingStats()
    texts = [format_digraph(D, S) for D, S in _gen_instances(args, stats)]
    if args.out is None:
        sys.stdout.write("\n".join(texts))
        return None, EXIT_OK
    out = Path(args.out)
    if args.count == 1 and not out.is_dir():
        paths = [out]
    else:
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / f"instance_{i:04d}.txt" for i in range(len(texts))]
    for path, text in zip(paths, texts):
        path.write_text(text)
    report = _report("gen")
    report["result"] = {
        "files": [str(p) for p in paths],
        "sha256": [digraph_sha256(parse_instance(t)[0]) for t in texts],
        "sampling": stats.as_dict() if args.target is not None else None,
    }
    if args.target is not None and len(texts) < args.count:
        report["status"] = "inconclusive"
    return report, EXIT_OK


def cmd_hunt(args) -> tuple[dict, int]:
    if args.n_min > args.n_max:
        raise InputError("--n-min exceeds --n-max")
    oracle = args.oracle_budget if args.oracle_budget is not None else default_limit(200_000)
    res = hunt_tightness(range(args.n_min, args.n_max + 1), args.budget, seed=args.seed,
                         oracle_budget=oracle, jobs=args.jobs)
    report = _report("hunt")
    report["result"] = res.as_dict()
    if res.inconclusive:
        report["status"] = "inconclusive"
    return report, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ditrail", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("file", help="instance file, or - for stdin")
            p.add_argument("--s", help="S as a comma list; overrides the S: line")
            p.add_argument("--budget", type=int, help="search expansion cap (default: $DITRAIL_BUDGET)")
        p.add_argument("--timing", action="store_true", help="record wall-clock timing_ms")
        p.add_argument("--report", help="write the JSON report here as well as stdout")

    p = sub.add_parser("check", help="evaluate sufficient conditions")
    common(p)
    p.add_argument("--theorem", action="append",
                   help="condition id (repeatable or comma list); default: all")
    p.add_argument("--verify", action="store_true",
                   help="confirm each holding condition with the exact oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="exact search for a closed ditrail through S")
    common(p)
    p.add_argument("--method", choices=("dfs", "subset"), default="dfs")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("construct", help="build a closed ditrail through S by local moves")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("gen", help="generate instances")
    common(p, instance=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--target", help="only emit instances passing this condition")
    p.add_argument("--s-size", type=int)
    p.add_argument("--shape", default="random", choices=("random", "two-cliques", "bipartite"))
    p.add_argument("--m", type=int, help="matching size for structured shapes")
    p.add_argument("--require-nonadjacent", action="store_true")
    p.add_argument("--max-attempts", type=int)
    p.add_argument("--out", help="output file (count 1) or directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hunt", help="search for 2n-4 boundary instances")
    common(p, instance=False)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--budget", type=int, default=1000, help="number of candidates")
    p.add_argument("--oracle-budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_hunt)
    return parser


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    logging.basicConfig(format="ditrail: %(levelname)s: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except (InputError, ValueError) as exc:
        print(f"ditrail: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report is None:
        return code
    if args.timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
    text = dumps(report)
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
