"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .enumerate import DEFAULT_BUDGET
from .errors import BudgetExceeded, NilcommError
from .modvar import LambdaModule, decompose, decomposition_report
from .pairs import CommPair
from .suites import SUITES, RunConfig, run_suite
from .variety import census, count_C, count_cent_nil, estimate_dim

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _qs(text):
    try:
        qs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not qs:
        raise argparse.ArgumentTypeError("empty list of field sizes")
    return qs


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="maximum enumeration visits (default 2^34)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=_positive, default=10_000,
                        help="trial count for randomized checks")
    common.add_argument("--workers", type=_positive, default=None,
                        help="worker processes (default: $NILCOMM_WORKERS or 1)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="nilcomm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", parents=[common], help="exact counts over several fields")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--qs", type=_qs, required=True)
    c.add_argument("--i", type=int, default=None, help="one stratum instead of all of C")
    c.add_argument("--method", choices=("auto", "brute", "fibered"), default="auto")

    c = sub.add_parser("count", parents=[common], help="one exact count")
    c.add_argument("what", choices=("full", "cent-nil"))
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--q", type=_positive, required=True)
    c.add_argument("--i", type=int, default=None)
    c.add_argument("--method", choices=("auto", "brute", "fibered"), default="auto")

    c = sub.add_parser("dim-est", parents=[common], help="dimension and leading coefficient estimate")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--i", type=int, default=None)
    c.add_argument("--qs", type=_qs, required=True)

    c = sub.add_parser("decompose", parents=[common], help="decompose the module of a pair")
    c.add_argument("--in", dest="infile", required=True, help="pair JSON {p,k,n,A,B}")

    c = sub.add_parser("verify", parents=[common], help="run a verification suite")
    c.add_argument("--suite", required=True, help=f"one of {', '.join(list(SUITES) + ['all'])}")
    return p


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _run(args):
    workers = RunConfig.resolve_workers(args.workers)
    kw = {"budget": args.budget, "workers": workers}
    if args.format == "csv" and args.command != "census":
        raise UsageError("CSV output is only available for census")

    if args.command == "census":
        rep = census(args.n, args.qs, args.i, method=args.method, **kw)
        _emit(rep.dumps(args.format), args.out)
        return EXIT_OK

    if args.command == "count":
        if args.what == "full":
            value = count_C(args.n, args.q, method=args.method, **kw)
        else:
            if args.i is None:
                raise UsageError("count cent-nil needs --i")
            value = count_cent_nil(args.n, args.i, args.q, method=args.method, **kw)
        _emit(f"{value}\n", args.out)
        return EXIT_OK

    if args.command == "dim-est":
        rep = census(args.n, args.qs, args.i, **kw)
        key = (args.n, "full" if args.i is None else args.i)
        if key not in rep.estimates:
            raise UsageError("need at least two distinct field sizes")
        est = estimate_dim([(r.q, r.count) for r in rep.records])
        _emit(_dump({"n": args.n, "i": key[1], "counts": {str(r.q): r.count for r in rep.records},
                     **est.to_json()}), args.out)
        return EXIT_OK

    if args.command == "decompose":
        try:
            with open(args.infile) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.infile}: {exc}") from exc
        if not isinstance(obj, dict):
            raise UsageError("pair JSON must be an object with fields p, k, n, A, B")
        mod = LambdaModule.from_pair(CommPair.from_json(obj))
        report = decomposition_report(decompose(mod, seed=args.seed))
        _emit(_dump(report), args.out)
        return EXIT_OK

    if args.command == "verify":
        if args.suite != "all" and args.suite not in SUITES:
            raise UsageError(f"unknown suite {args.suite!r}; expected one of {list(SUITES) + ['all']}")
        cfg = RunConfig(budget=args.budget, samples=args.samples, seed=args.seed, workers=workers)
        rep = run_suite(args.suite, cfg)
        _emit(rep.dumps(), args.out)
        return EXIT_OK if rep.passed else EXIT_FAIL
    raise UsageError(f"unknown command {args.command}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad usage
    try:
        return _run(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, NilcommError, ValueError) as exc:
        eq = getattr(exc, "equation", None)
        suffix = f" [{eq}]" if eq else ""
        print(f"error: {exc}{suffix}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
