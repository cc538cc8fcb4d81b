"""semidlog command line: cycle, dlog, bench, selftest.

Element specs are inline JSON documents or @file references.  Exit codes
form a stable contract:

  0  success
  1  selftest failure
  2  element spec / argument parse error
  3  verification failure (a probabilistic result failed its check)
  4  no solution (dlog target is not a power of the base)

Randomized commands are reproducible from (arguments, seed); the default
seed is DEFAULT_SEED, overridable with the SEMIDLOG_SEED environment
variable or --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench
from .core import CycleStructure, NoSolutionError, SemigroupError, power
from .cycle import (
    banin_tsaban_cycle_length,
    brute_force_cycle,
    cycle_start_search,
    deterministic_cycle_length,
    monico_cycle_length,
)
from .dlp import pohlig_hellman_dlog, semigroup_dlog, factor_integer
from .instances import ElementSpecError, parse_element_spec
from .selftest import run_selftests

DEFAULT_SEED = 1729

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_NO_SOLUTION = 4

CYCLE_ALGS = ("deterministic", "monico", "banin-tsaban", "brute")
DLOG_ALGS = ("reduction", "pohlig-hellman")


def _default_seed() -> int:
    env = os.environ.get("SEMIDLOG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ElementSpecError(f"SEMIDLOG_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _load_spec(spec: str):
    if spec.startswith("@"):
        try:
            with open(spec[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ElementSpecError(f"cannot read spec file: {exc}", spec)
        return parse_element_spec(text)
    return parse_element_spec(spec)


def _parse_rounds(text: str):
    try:
        r, s = (int(part) for part in text.split(","))
    except ValueError:
        raise ElementSpecError("--rounds expects 'r,s' with integers", text)
    if r < 1 or s < 1:
        raise ElementSpecError("--rounds values must be >= 1", text)
    return r, s


def _emit(payload: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _verify_cycle(ctx, x, start, length) -> str | None:
    """Cheap exactness check of a reported (start, length) pair.

    Confirms the defining equality, the minimality of the start, and the
    minimality of the length over its prime cofactors.  Returns an error
    string on failure.
    """
    anchor = power(ctx, x, start)
    if not ctx.equal(ctx.mul(power(ctx, x, length), anchor), anchor):
        return f"x^{start + length} != x^{start}: reported length is not a period"
    if start > 1:
        prev = power(ctx, x, start - 1)
        if ctx.equal(ctx.mul(power(ctx, x, length), prev), prev):
            return f"cycle start {start} is not minimal"
    for p, _ in factor_integer(length):
        shorter = length // p
        if ctx.equal(ctx.mul(power(ctx, x, shorter), anchor), anchor):
            return (f"reported length {length} is a proper multiple: "
                    f"x^{start + shorter} = x^{start}")
    return None


def cmd_cycle(args) -> int:
    ctx, x = _load_spec(args.element)
    seed = args.seed
    rounds = _parse_rounds(args.rounds) if args.rounds else None
    trace_json = None
    if args.alg == "brute":
        cyc = brute_force_cycle(ctx, x)
        start, length = cyc.cycle_start, cyc.cycle_length
    elif args.alg == "deterministic":
        length, trace = deterministic_cycle_length(ctx, x, args.bound)
        trace_json = trace.to_json()
        start = cycle_start_search(ctx, x, length)
    elif args.alg == "monico":
        length, trace = monico_cycle_length(ctx, x, args.bound,
                                            args.divisor_bound, seed)
        trace_json = trace.to_json()
        start = cycle_start_search(ctx, x, length)
    else:  # banin-tsaban
        inner, outer = rounds if rounds else (4, None)
        length, trace = banin_tsaban_cycle_length(
            ctx, x, args.bound or 16, inner_rounds=inner,
            outer_rounds=outer, seed=seed)
        trace_json = trace.to_json()
        start = cycle_start_search(ctx, x, length)

    problem = None if args.no_verify else _verify_cycle(ctx, x, start, length)
    result = {
        "command": "cycle",
        "algorithm": args.alg,
        "instance": ctx.describe(),
        "element": ctx.element_json(x),
        "cycle": {"cycle_start": start, "cycle_length": length,
                  "order": start + length - 1},
        "multiplications": ctx.mult_count,
        "seed": seed,
        "verified": None if args.no_verify else problem is None,
        "trace": trace_json,
    }
    if args.json_output:
        _emit(json.dumps(result, sort_keys=True) + "\n", args.out)
    else:
        lines = [
            f"instance: {json.dumps(ctx.describe(), sort_keys=True)}",
            f"algorithm: {args.alg}",
            f"cycle_start={start} cycle_length={length} order={start + length - 1}",
            f"multiplications: {ctx.mult_count}",
        ]
        if problem:
            lines.append(f"VERIFICATION FAILED: {problem}")
        _emit("\n".join(lines) + "\n", args.out)
    if problem:
        print(f"error: verification failed: {problem}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_dlog(args) -> int:
    ctx, x = _load_spec(args.base)
    ctx_y, y = _load_spec(args.target)
    if ctx.describe() != ctx_y.describe():
        raise ElementSpecError(
            f"base and target live in different instances: "
            f"{ctx.describe()} vs {ctx_y.describe()}")
    length, _ = deterministic_cycle_length(ctx, x, args.bound)
    start = cycle_start_search(ctx, x, length)
    cyc = CycleStructure(start, length)
    if args.alg == "pohlig-hellman":
        sol, trace = pohlig_hellman_dlog(ctx, x, y, cyc)
    else:
        sol, trace = semigroup_dlog(ctx, x, y, cyc)
    # confirm before reporting
    if not ctx.equal(power(ctx, x, sol.smallest()), y):
        print("error: solver output failed the power check", file=sys.stderr)
        return EXIT_VERIFY
    result = {
        "command": "dlog",
        "algorithm": args.alg,
        "instance": ctx.describe(),
        "base": ctx.element_json(x),
        "target": ctx.element_json(y),
        "cycle": cyc.to_json(),
        "solution": sol.to_json(),
        "multiplications": ctx.mult_count,
        "seed": args.seed,
        "trace": trace.to_json(),
    }
    if args.json_output:
        _emit(json.dumps(result, sort_keys=True) + "\n", args.out)
    else:
        if sol.kind == "unique":
            desc = f"unique m={sol.m0}"
        else:
            desc = f"progression m0={sol.m0} period={sol.period}"
        _emit(f"instance: {json.dumps(ctx.describe(), sort_keys=True)}\n"
              f"solution: {desc}\n"
              f"multiplications: {ctx.mult_count}\n", args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = []
    if args.sizes:
        for part in args.sizes.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                sizes.append(int(part, 0))
            except ValueError:
                raise ElementSpecError(f"bad size {part!r}", "--sizes")
    rounds = _parse_rounds(args.rounds) if args.rounds else None
    records = bench.run_sweep(
        family=args.family, algorithm=args.alg, sizes=sizes,
        trials=args.trials, seed=args.seed, bound=args.bound,
        divisor_bound=args.divisor_bound, rounds=rounds, dim=args.dim,
        modulus=args.modulus, check_oracle=not args.no_oracle)
    if args.format == "csv":
        payload = bench.records_to_csv(records)
    else:
        payload = bench.records_to_jsonl(records)
    _emit(payload, args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_selftests(args.seed)
    if args.json_output:
        payload = json.dumps({"command": "selftest", "seed": args.seed,
                              "suites": [r.to_json() for r in results]},
                             sort_keys=True) + "\n"
        _emit(payload, args.out)
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"[{status}] {r.name}: {r.detail}")
        _emit("\n".join(lines) + "\n", args.out)
    failures = [r for r in results if not r.passed]
    if failures:
        print(f"error: {len(failures)} suite(s) failed: "
              + ", ".join(r.name for r in failures), file=sys.stderr)
        return EXIT_SELFTEST
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semidlog",
        description="Cycle structure and discrete logarithms for torsion "
                    "elements of finite semigroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="RNG seed (default: SEMIDLOG_SEED or "
                                f"{DEFAULT_SEED})")
        p.add_argument("--json-output", action="store_true",
                       help="emit a machine-readable JSON document")
        p.add_argument("--out", metavar="FILE", default=None,
                       help="write output to FILE instead of stdout")

    p_cycle = sub.add_parser("cycle", help="compute cycle start and length")
    p_cycle.add_argument("element", metavar="ELEMENT_SPEC",
                         help="inline JSON element spec or @file")
    p_cycle.add_argument("--alg", choices=CYCLE_ALGS, default="deterministic")
    p_cycle.add_argument("--bound", type=int, default=None,
                         help="known upper bound on the order; forces a "
                              "single round instead of doubling")
    p_cycle.add_argument("--B", dest="divisor_bound", type=int,
                         default=10 ** 4, metavar="N",
                         help="divisor bound for monico stripping")
    p_cycle.add_argument("--rounds", metavar="r,s", default=None,
                         help="inner,outer round counts for banin-tsaban")
    p_cycle.add_argument("--no-verify", action="store_true",
                         help="skip the exactness verification of the result")
    common(p_cycle)

    p_dlog = sub.add_parser("dlog", help="solve x^m = y")
    p_dlog.add_argument("base", metavar="X_SPEC")
    p_dlog.add_argument("target", metavar="Y_SPEC")
    p_dlog.add_argument("--alg", choices=DLOG_ALGS, default="reduction")
    p_dlog.add_argument("--bound", type=int, default=None,
                        help="known upper bound on the order of the base")
    common(p_dlog)

    p_bench = sub.add_parser("bench", help="seeded benchmark sweep")
    p_bench.add_argument("--family", required=True,
                         choices=("zmod", "matmod", "boolmat",
                                  "transformation", "monogenic"))
    p_bench.add_argument("--alg", choices=CYCLE_ALGS, default="deterministic")
    p_bench.add_argument("--sizes", default="",
                         help="comma-separated instance sizes (0x/0b forms ok)")
    p_bench.add_argument("--trials", type=int, default=1)
    p_bench.add_argument("--bound", type=int, default=None)
    p_bench.add_argument("--B", dest="divisor_bound", type=int,
                         default=10 ** 4, metavar="N")
    p_bench.add_argument("--rounds", metavar="r,s", default=None)
    p_bench.add_argument("--dim", type=int, default=2,
                         help="matrix dimension for matmod/boolmat")
    p_bench.add_argument("--modulus", type=int, default=5,
                         help="modulus for matmod")
    p_bench.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_bench.add_argument("--no-oracle", action="store_true",
                         help="skip brute-force success checking")
    common(p_bench)

    p_self = sub.add_parser("selftest", help="run built-in consistency suites")
    common(p_self)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", None) is None and hasattr(args, "seed"):
            args.seed = _default_seed()
        handler = {
            "cycle": cmd_cycle,
            "dlog": cmd_dlog,
            "bench": cmd_bench,
            "selftest": cmd_selftest,
        }[args.command]
        return handler(args)
    except ElementSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoSolutionError as exc:
        print(f"error: no solution: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except SemigroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
