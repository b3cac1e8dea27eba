"""Commands behind the CLI.  Each returns a plain ``results`` dict."""

from __future__ import annotations

import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import estimator, oracles
from .graph import (
    EdgeStream,
    InstanceTooLarge,
    exact_arboricity,
    generate_forest_union,
    maximum_matching_size,
    shuffle_stream,
)

DEFAULT_SWEEP_THRESHOLD = 0.9


def derive_seed(master: int, index: int) -> int:
    return master * 1_000_003 + index


def _ratio(x: Fraction) -> dict:
    return {"value": float(x), "exact": str(x)}


def exact(stream: EdgeStream, alpha: int) -> dict:
    e_alpha, _ = oracles.exact_e_alpha(stream, alpha)
    profile = oracles.exact_e_star(stream, alpha)
    g = stream.graph()
    try:
        matching = maximum_matching_size(g)
    except InstanceTooLarge:
        matching = None
    try:
        arboricity = exact_arboricity(g)
    except (InstanceTooLarge, ValueError):
        arboricity = None
    return {
        "edges": len(stream),
        "e_alpha": e_alpha,
        "e_star": profile.e_star,
        "argmax_t": profile.argmax_t,
        "matching": matching,
        "arboricity": arboricity,
    }


def estimate(stream: EdgeStream, config: estimator.EstimatorConfig) -> dict:
    state = estimator.run_state(stream, config)
    bounds = estimator.matching_bounds(state.running_max, config.alpha, config.epsilon)
    return {
        "estimate": bounds.estimate,
        "match_lower": _ratio(bounds.lower),
        "match_upper": _ratio(bounds.upper),
        "final_level": state.level,
        "peak_tracked_edges": state.peak_tracked,
        "edges": state.edges_seen,
    }


def _e_alpha_count(s: EdgeStream, alpha: int) -> int:
    return oracles.exact_e_alpha(s, alpha)[0]


def _e_star_value(s: EdgeStream, alpha: int) -> int:
    return oracles.exact_e_star(s, alpha).e_star


def _matching(s: EdgeStream) -> int:
    return maximum_matching_size(s.graph())


@dataclass(frozen=True)
class Oracles:
    """Swappable oracle set, so the verifier can be checked against a broken one."""

    e_alpha: Callable[[EdgeStream, int], int] = _e_alpha_count
    e_star: Callable[[EdgeStream, int], int] = _e_star_value
    matching: Callable[[EdgeStream], int] = _matching
    classify: Callable[[EdgeStream, int], oracles.DiagnosticReport] = oracles.classify_edges


def check_instance(
    stream: EdgeStream,
    alpha: int,
    orc: Oracles = Oracles(),
    arboricity_bounded: bool = True,
) -> list[str]:
    """All violations for one stream; empty means pass.

    The sandwich bounds and the heavy-vertex inequalities are only asserted
    when ``arboricity_bounded`` (the graph's arboricity is at most alpha).
    """
    report = orc.classify(stream, alpha)
    bad = report.identity_violations()
    if not arboricity_bounded:
        return bad
    m = orc.matching(stream)
    ea = orc.e_alpha(stream, alpha)
    es = orc.e_star(stream, alpha)
    if not m <= ea <= (alpha + 2) * m:
        bad.append(f"sandwich: match={m}, |E_alpha|={ea}, (alpha+2)match={(alpha + 2) * m}")
    if not m <= es <= (alpha + 2) * m:
        bad.append(f"prefix sandwich: match={m}, E*={es}, (alpha+2)match={(alpha + 2) * m}")
    if es < ea:
        bad.append(f"E*={es} < |E_alpha|={ea}")
    bad += report.arboricity_violations()
    return bad


def verify(
    trials: int,
    n_range: tuple[int, int],
    alphas: Sequence[int],
    seed: int,
    orc: Oracles = Oracles(),
) -> dict:
    passed = failed = 0
    first = None
    for i in range(trials):
        rng = random.Random(derive_seed(seed, i))
        n = rng.randint(*n_range)
        alpha = rng.choice(list(alphas))
        stream = generate_forest_union(n, alpha, rng.getrandbits(32))
        stream = shuffle_stream(stream, rng.getrandbits(32))
        bounded = not stream.edges or exact_arboricity(stream.graph()) <= alpha
        bad = [] if bounded else ["generator exceeded arboricity bound"]
        bad += check_instance(stream, alpha, orc, arboricity_bounded=bounded)
        if bad:
            failed += 1
            if first is None:
                first = {
                    "trial": i,
                    "n": n,
                    "alpha": alpha,
                    "stream": stream.pairs(),
                    "violations": bad,
                }
        else:
            passed += 1
    return {
        "trials": trials,
        "passed": passed,
        "failed": failed,
        "first_counterexample": first,
    }


def _one_run(args: tuple[EdgeStream, estimator.EstimatorConfig]) -> int:
    stream, config = args
    return estimator.run(stream, config)


def sweep(
    stream: EdgeStream,
    alpha: int,
    epsilon: float,
    seeds: Sequence[int],
    n: int,
    capacity: int | None = None,
    threshold: float = DEFAULT_SWEEP_THRESHOLD,
    jobs: int = 1,
) -> dict:
    if not seeds:
        raise ValueError("sweep needs at least one seed")
    configs = [
        estimator.EstimatorConfig(alpha, epsilon, n, capacity=capacity, seed=s) for s in seeds
    ]
    work = [(stream, c) for c in configs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            estimates = list(pool.map(_one_run, work))
    else:
        estimates = [_one_run(w) for w in work]

    e_star = oracles.exact_e_star(stream, alpha).e_star
    eps = Fraction(repr(epsilon))
    per_seed = []
    within = 0
    for s, est in zip(seeds, estimates):
        if e_star:
            rel = Fraction(est - e_star, e_star)
        else:
            rel = Fraction(0 if est == 0 else 1)
        ok = abs(rel) <= eps
        within += ok
        per_seed.append({"seed": s, "estimate": est, "relative_error": float(rel), "within": ok})
    fraction = within / len(seeds)
    return {
        "e_star": e_star,
        "capacity": configs[0].capacity,
        "runs": per_seed,
        "within_fraction": fraction,
        "threshold": threshold,
        "passed": fraction >= threshold,
        "mean_estimate": statistics.fmean(estimates),
        "min_estimate": min(estimates),
        "max_estimate": max(estimates),
    }
