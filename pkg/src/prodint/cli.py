"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 infeasible target, 4 verification
mismatch, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from prodint.acceptance import DEFAULT_SEED, run_all
from prodint.core import DEFAULT_TABLE_BUDGET
from prodint.errors import BudgetExceeded, InfeasibleTarget, VerificationError
from prodint.natset import NatSet
from prodint.realizer import classify_hq, realize_hnstar, realize_hq
from prodint.truncadd import verify_pair_single_exclusion
from prodint.wordcap import verify_single_exclusion_wordcap

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4, 5


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget", type=_positive, help="tuple budget for enumeration oracles")
    common.add_argument("--table-budget", type=_positive, default=DEFAULT_TABLE_BUDGET)

    parser = argparse.ArgumentParser(prog="prodint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single-exclusion", parents=[common], help="verify a single-exclusion block")
    p.add_argument("--family", choices=["wordcap", "truncadd"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hmax", type=int)

    p = sub.add_parser("realize", parents=[common], help="realize a target exponent set")
    p.add_argument("--setting", choices=["hnstar", "hq"], required=True)
    p.add_argument("--target", required=True, help='e.g. "all", "1,3,7", "all-except:2,4"')
    p.add_argument("--q-count", type=int, default=2)
    p.add_argument("--hmax", type=int)
    p.add_argument("--explicit", action="store_true", help="also build small products explicitly")

    p = sub.add_parser("classify", parents=[common], help="realizable sets for a given index-set size")
    p.add_argument("--cardinality", choices=["zero", "one", "at_least_two"], required=True)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    return parser


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _single_exclusion(args, parser) -> int:
    if args.n < 2:
        parser.error("--n must be >= 2")
    hmax = args.n + 3 if args.hmax is None else args.hmax
    if hmax < args.n + 1:
        parser.error("--hmax must be >= n+1")
    verify = verify_single_exclusion_wordcap if args.family == "wordcap" else verify_pair_single_exclusion
    report = verify(args.n, hmax)
    _emit(args, report.to_json(), report.render())
    return EXIT_OK if report.resolved == NatSet.cofinite([args.n]) else EXIT_MISMATCH


def _realize(args, parser) -> int:
    try:
        target = NatSet.parse(args.target)
    except ValueError as exc:
        parser.error(str(exc))
    budget = args.table_budget if args.explicit else 0
    if args.setting == "hq":
        if args.q_count < 2:
            parser.error("--q-count must be >= 2 (use `classify` for smaller index sets)")
        real = realize_hq(target, args.q_count, args.hmax, explicit_budget=budget)
    else:
        real = realize_hnstar(target, args.hmax, explicit_budget=budget)
    text = f"{real.mode} over {real.components or '-'}: {real.certificate.render()}"
    if real.explicit_product_size:
        text += f"\nexplicit product of size {real.explicit_product_size} agrees"
    _emit(args, real.to_json(), text)
    return EXIT_OK


def _classify(args, parser) -> int:
    result = classify_hq(args.cardinality, seed=args.seed)
    payload = {
        "cardinality": result.cardinality,
        "realizable": None if result.realizable is None else [str(s) for s in result.realizable],
        "rule": result.rule,
        "witnesses": result.witnesses,
    }
    text = f"{result.cardinality}: {result.rule}\n" + "\n".join(f"  - {w}" for w in result.witnesses)
    _emit(args, payload, text)
    return EXIT_OK


def _selftest(args, parser) -> int:
    quick = args.level == "quick"
    outcomes = run_all(quick=quick, seed=args.seed, echo=print if args.format == "text" else None)
    if args.format == "json":
        print(json.dumps([
            {"criterion": o.criterion.number, "name": o.criterion.name, "passed": o.passed, "detail": o.detail}
            for o in outcomes
        ]))
    failed = [o for o in outcomes if not o.passed]
    if failed:
        print(f"first failure: {failed[0].criterion.name}", file=sys.stderr)
        return EXIT_BUDGET if failed[0].detail.startswith(BudgetExceeded.__name__) else EXIT_MISMATCH
    return EXIT_OK


COMMANDS = {
    "single-exclusion": _single_exclusion,
    "realize": _realize,
    "classify": _classify,
    "selftest": _selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("PRODINT_BUDGET")
    if args.budget is not None:
        os.environ["PRODINT_BUDGET"] = str(args.budget)
    try:
        return COMMANDS[args.command](args, parser)
    except InfeasibleTarget as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("PRODINT_BUDGET", None)
        else:
            os.environ["PRODINT_BUDGET"] = saved


if __name__ == "__main__":
    sys.exit(main())
