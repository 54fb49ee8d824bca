"""Command-line entry point.

Machine-readable JSON goes to stdout, a one-line human summary to stderr.
Exit codes: 0 ok, 1 property or verdict false, 2 usage error, 3 internal failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import adaptive, family, hypergraph, models, separation
from .errors import (
    BadParameter,
    BadScenario,
    BudgetExceeded,
    ConstructionFailure,
    GroupTestError,
    IncompleteTranscript,
    StrategyError,
)
from .family import SetFamily
from .generators import SweepSpec
from .sweeps import THEOREMS, run_sweep

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required here")


PROPERTIES = {
    "sperner": lambda F, a: family.is_sperner(F),
    "cancellative": lambda F, a: family.is_cancellative(F),
    "int-cancellative": lambda F, a: family.is_intersection_cancellative(F),
    "int-closed": lambda F, a: family.is_intersection_closed(F),
    "d-separating": lambda F, a: separation.is_d_separating(F, a.d),
    "d-union-free": lambda F, a: separation.is_d_union_free(F, a.d),
    "d-cover-free": lambda F, a: separation.is_d_cover_free(F, a.d),
    "rd-cover-free": lambda F, a: separation.is_r_d_cover_free(F, a.r, a.d),
    "model1": lambda F, a: models.solves_model1_semantic(F, a.d),
    "model2": lambda F, a: models.solves_model2_semantic(F, a.d),
    "model2prime": lambda F, a: models.solves_model2prime_semantic(F, a.d),
    "model2dbl": lambda F, a: models.solves_model2dbl_semantic(F, a.d),
    "model3": lambda F, a: models.solves_model3_semantic(F, a.d),
    "model4": lambda F, a: models.solves_model4_semantic(F, a.d, a.i, a.j),
}

_NEEDS = {
    "rd-cover-free": ("d", "r"),
    "model4": ("d", "i", "j"),
}

STRATEGIES = {
    "halving-model3": "model3",
    "find-announce-model1": "model1",
    "find-announce-model2prime": "model2prime",
    "find-announce-model2dbl": "model2dbl",
    "singletons": "model1",
}


def _read_family(path: str) -> SetFamily:
    try:
        return SetFamily.from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(payload: dict, summary: str) -> None:
    print(json.dumps(payload))
    print(summary, file=sys.stderr)


def cmd_check(args) -> int:
    if args.property not in PROPERTIES:
        raise UsageError(f"unknown property {args.property!r}; choose from {', '.join(PROPERTIES)}")
    needs = _NEEDS.get(args.property, ("d",) if args.property.startswith(("d-", "model")) else ())
    _need(args, *needs)
    F = _read_family(args.family)
    result = PROPERTIES[args.property](F, args)
    payload = {"property": args.property, **result.to_dict()}
    ok = bool(result)
    _emit(payload, f"{args.property}: {'holds' if ok else 'fails'}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_construct(args) -> int:
    if args.kind == "binary-separating":
        _need(args, "n")
        F = separation.binary_separating_family(args.n)
        validation = separation.is_d_separating(F, 1).to_dict()
    elif args.kind == "girth-hypergraph":
        _need(args, "n", "r", "d", "g")
        F = hypergraph.construct_girth_hypergraph(
            args.n, args.r, args.d, args.g, seed=args.seed, max_restarts=args.max_restarts
        )
        validation = hypergraph.validate_hypergraph(F, args.r, args.d, args.g).to_dict()
    else:
        _need(args, "n", "d")
        F = hypergraph.model3_construction(
            args.n, args.d, seed=args.seed, max_restarts=args.max_restarts
        )
        validation = {
            "min_set_size": min(family.popcount(s) for s in F.sets),
            "girth": hypergraph.berge_girth(F),
        }
    if args.out:
        Path(args.out).write_text(F.to_json())
    _emit(
        {"kind": args.kind, "family": F.to_dict(), "validation": validation},
        f"{args.kind}: {len(F)} sets on {F.n} elements",
    )
    return EXIT_OK


def _strategy(name: str, n: int, d: int, permute: int | None):
    if name == "halving-model3":
        return adaptive.strategy_halving_model3(n, d, seed=permute)
    if name == "singletons":
        return adaptive.singletons_strategy(n, d)
    return adaptive.strategy_find_then_announce(name.removeprefix("find-announce-"), n, d)


def cmd_simulate(args) -> int:
    if args.strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {args.strategy!r}")
    n, d = args.n, args.d
    if args.oracle:
        try:
            oracles = [[int(x) for x in args.oracle.split(",")]]
        except ValueError:
            raise UsageError(f"bad --oracle {args.oracle!r}") from None
    else:
        rng = random.Random(args.seed)
        oracles = [sorted(rng.sample(range(1, n + 1), d)) for _ in range(args.random or 1)]
    model = STRATEGIES[args.strategy]
    runs, transcripts = [], []
    failure = None
    for D in oracles:
        try:
            t = adaptive.run_session(_strategy(args.strategy, n, d, args.permute_seed), D, n, d)
        except StrategyError as exc:
            failure = f"{type(exc).__name__}: {exc}"
            runs.append({"oracle": D, "error": failure})
            continue
        verdict = adaptive.verify_transcript(t, model)
        transcripts.append(t.to_dict())
        runs.append(
            {
                "oracle": D,
                "queries": len(t),
                "verdict": sorted(t.verdict),
                "correct": t.verdict == frozenset(D),
                "verified": verdict.to_dict(),
            }
        )
    if args.out:
        data = transcripts[0] if len(transcripts) == 1 and len(oracles) == 1 else transcripts
        Path(args.out).write_text(json.dumps(data))
    done = [r for r in runs if "error" not in r]
    payload = {
        "strategy": args.strategy,
        "model": model,
        "n": n,
        "d": d,
        "runs": runs,
        "max_queries": max((r["queries"] for r in done), default=None),
        "all_correct": all(r["correct"] for r in done),
        "all_verified": all(r["verified"]["solves"] for r in done),
    }
    if args.strategy == "halving-model3":
        payload["query_bound"] = adaptive.halving_query_bound(n, d)
    _emit(payload, f"{args.strategy}: {len(done)}/{len(runs)} sessions completed")
    if failure is not None:
        return EXIT_FAILURE
    return EXIT_OK if payload["all_correct"] and payload["all_verified"] else EXIT_FALSE


def cmd_sweep(args) -> int:
    if args.theorem not in THEOREMS:
        raise UsageError(f"unknown theorem {args.theorem!r}")
    try:
        ds = tuple(int(x) for x in args.d.split(","))
    except ValueError:
        raise UsageError(f"bad --d {args.d!r}") from None
    if args.random:
        spec = SweepSpec(args.n, args.max_sets, ds, "random", args.random, args.seed)
    else:
        spec = SweepSpec(args.n, args.max_sets, ds)
    result = run_sweep(args.theorem, spec, jobs=args.jobs)
    _emit(result.to_dict(), f"{args.theorem}: {result.cases} cases, {result.mismatches} mismatches")
    return EXIT_OK if result.ok else EXIT_FALSE


def cmd_verify(args) -> int:
    try:
        t = adaptive.Transcript.from_json(Path(args.transcript).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.transcript}: {exc}") from None
    verdict = adaptive.verify_transcript(t, args.model, args.i, args.j)
    _emit({"model": args.model, **verdict.to_dict()}, f"{args.model}: {'verified' if verdict else 'fails'}")
    return EXIT_OK if verdict else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grouptest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test a family property or model")
    p.add_argument("family")
    p.add_argument("property")
    for flag in ("d", "r", "i", "j"):
        p.add_argument(f"--{flag}", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build a family")
    p.add_argument("kind", choices=["binary-separating", "girth-hypergraph", "model3"])
    for flag in ("n", "r", "d", "g"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-restarts", type=int, default=5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="run adaptive sessions")
    p.add_argument("strategy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--oracle")
    group.add_argument("--random", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--permute-seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="check a theorem over many families")
    p.add_argument("theorem")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-sets", type=int, default=4)
    p.add_argument("--d", default="2")
    p.add_argument("--random", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="re-check a transcript against a model")
    p.add_argument("transcript")
    p.add_argument("model", choices=adaptive.MODEL_TAGS)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BadParameter, BadScenario, IncompleteTranscript) as exc:
        print(json.dumps({"error": str(exc)}))
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructionFailure, BudgetExceeded, StrategyError, GroupTestError) as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}))
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
