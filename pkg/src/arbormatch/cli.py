"""``arbormatch`` command line: one JSON report per invocation on stdout."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import harness
from .estimator import EstimatorConfig, InvalidConfig
from .graph import ParseError, dump, generate_forest_union, load

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def _default_seed() -> int:
    env = os.environ.get("ARBORMATCH_SEED")
    return int(env) if env else 0


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arbormatch",
        description="One-pass matching-size estimation for bounded-arboricity edge streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file=True, estimator=False):
        if file:
            p.add_argument("file", help="edge-list file ('u v' per line, optional '# n=<int>')")
        p.add_argument("--alpha", type=int, required=True)
        p.add_argument("--seed", type=int, default=None,
                       help="master seed (fallback: $ARBORMATCH_SEED, then 0)")
        if estimator:
            p.add_argument("--epsilon", type=float, required=True)
            p.add_argument("--capacity", type=int, default=None,
                           help="override ceil(30 eps^-2 log2 n)")

    common(sub.add_parser("exact", help="oracle values for a stream"))
    common(sub.add_parser("estimate", help="run the streaming estimator once"), estimator=True)

    p = sub.add_parser("sweep", help="estimator over many seeds vs the oracle")
    common(p, estimator=True)
    p.add_argument("--seeds", type=int, default=100, help="number of seeds")
    p.add_argument("--threshold", type=float, default=harness.DEFAULT_SWEEP_THRESHOLD)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("generate", help="write a random forest-union stream")
    common(p, file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check the bounds on random small instances")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--alphas", type=_int_list, default=[1, 2, 3])
    p.add_argument("--seed", type=int, default=None)
    return parser


def _config(args, n: int, seed: int) -> EstimatorConfig:
    return EstimatorConfig(args.alpha, args.epsilon, max(n, 2), capacity=args.capacity, seed=seed)


def execute(args) -> tuple[dict, dict, int]:
    """Run a parsed command; returns (parameters, results, exit code)."""
    seed = args.seed if args.seed is not None else _default_seed()
    params: dict = {"seed": seed}

    if args.command == "generate":
        stream = generate_forest_union(args.n, args.alpha, seed)
        dump(stream, args.out)
        params.update(n=args.n, alpha=args.alpha, out=args.out)
        return params, {"edges": len(stream), "n": stream.n}, EXIT_OK

    if args.command == "verify":
        if args.n_min < 2 or args.n_max < args.n_min:
            raise ValueError(f"bad n range [{args.n_min}, {args.n_max}]")
        params.update(trials=args.trials, n_range=[args.n_min, args.n_max], alphas=args.alphas)
        results = harness.verify(args.trials, (args.n_min, args.n_max), args.alphas, seed)
        return params, results, EXIT_FAILED if results["failed"] else EXIT_OK

    stream, inferred = load(args.file)
    params.update(file=str(args.file), alpha=args.alpha, n=stream.n, n_inferred=inferred)

    if args.command == "exact":
        return params, harness.exact(stream, args.alpha), EXIT_OK

    config = _config(args, stream.n, seed)
    params.update(epsilon=args.epsilon, capacity=config.capacity)
    if args.command == "estimate":
        return params, harness.estimate(stream, config), EXIT_OK

    if args.seeds < 1:
        raise ValueError("--seeds must be >= 1")
    seeds = [seed + i for i in range(args.seeds)]
    params.update(seeds=seeds, threshold=args.threshold)
    results = harness.sweep(
        stream, args.alpha, args.epsilon, seeds, config.n,
        capacity=args.capacity, threshold=args.threshold, jobs=args.jobs,
    )
    return params, results, EXIT_OK if results["passed"] else EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        params, results, code = execute(args)
    except (ParseError, InvalidConfig, ValueError, OSError) as err:
        print(f"arbormatch {args.command}: {err}", file=sys.stderr)
        return EXIT_ERROR
    report = {
        "command": args.command,
        "parameters": params,
        "results": results,
        "timing_ms": int((time.perf_counter() - start) * 1000),
    }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
