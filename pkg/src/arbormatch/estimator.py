"""One-pass estimator of the best prefix good-edge count, with level halving.

Each arriving edge is kept with probability ``2**-level`` together with two
counters recording how many later edges touched each endpoint.  A kept edge
whose counter passes ``alpha`` is dropped.  When more than ``capacity`` edges
are held, the level goes up and every held edge survives a fair coin.  The
answer is the largest ``len(tracked) * 2**level`` seen after any edge.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .graph import DuplicateEdge, Edge, EdgeStream

CAPACITY_CONSTANT = 30


class InvalidConfig(ValueError):
    def __init__(self, field_name: str, detail: str):
        self.field = field_name
        super().__init__(f"{field_name}: {detail}")


def default_capacity(epsilon: float, n: int, constant: float = CAPACITY_CONSTANT) -> int:
    """ceil(constant * epsilon**-2 * log2(n))."""
    return max(1, math.ceil(constant * math.log2(n) / (epsilon * epsilon)))


@dataclass(frozen=True)
class EstimatorConfig:
    alpha: int
    epsilon: float
    n: int
    capacity: int | None = None
    seed: int | None = 0
    detect_duplicates: bool = False

    def __post_init__(self):
        if not isinstance(self.alpha, int) or self.alpha < 0:
            raise InvalidConfig("alpha", f"must be an integer >= 0, got {self.alpha!r}")
        if not 0 < self.epsilon < 1:
            raise InvalidConfig("epsilon", f"must lie in (0, 1), got {self.epsilon!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidConfig("n", f"must be an integer >= 2, got {self.n!r}")
        if self.capacity is None:
            object.__setattr__(self, "capacity", default_capacity(self.epsilon, self.n))
        elif self.capacity < 1:
            raise InvalidConfig("capacity", f"must be >= 1, got {self.capacity!r}")


@dataclass
class TrackedEdge:
    edge: Edge
    c_u: int = 0
    c_v: int = 0

    def counter(self, w: int) -> int:
        return self.c_u if w == self.edge.u else self.c_v


@dataclass
class SamplerState:
    config: EstimatorConfig
    rng: random.Random
    tracked: dict[tuple[int, int], TrackedEdge] = field(default_factory=dict)
    level: int = 0
    running_max: int = 0
    edges_seen: int = 0
    peak_tracked: int = 0
    # vertex -> keys of tracked edges touching it
    incident: dict[int, set[tuple[int, int]]] = field(default_factory=dict)
    seen_keys: set[tuple[int, int]] | None = None

    @property
    def capacity(self) -> int:
        return self.config.capacity

    @property
    def p(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    def __len__(self) -> int:
        return len(self.tracked)

    def _drop(self, key: tuple[int, int]) -> None:
        del self.tracked[key]
        for w in key:
            keys = self.incident[w]
            keys.discard(key)
            if not keys:
                del self.incident[w]


def init(config: EstimatorConfig, rng: random.Random | None = None) -> SamplerState:
    """Fresh state: nothing tracked, p = 1, max = 0.

    ``rng`` replaces the generator seeded from ``config.seed``; tests use it
    to script coin flips.
    """
    return SamplerState(
        config=config,
        rng=rng if rng is not None else random.Random(config.seed),
        seen_keys=set() if config.detect_duplicates else None,
    )


def process_edge(state: SamplerState, e: Edge) -> SamplerState:
    key = e.key
    if state.seen_keys is not None:
        if key in state.seen_keys:
            raise DuplicateEdge(state.edges_seen, repr(e))
        state.seen_keys.add(key)
    alpha = state.config.alpha
    rng = state.rng

    # (a) sample with probability 2**-level
    if state.level == 0 or rng.getrandbits(state.level) == 0:
        state.tracked[key] = TrackedEdge(e)
        added = True
    else:
        added = False

    # (b) bump counters of other tracked edges at the shared endpoints
    for w in key:
        for other in list(state.incident.get(w, ())):
            tr = state.tracked[other]
            if w == tr.edge.u:
                tr.c_u += 1
                over = tr.c_u > alpha
            else:
                tr.c_v += 1
                over = tr.c_v > alpha
            if over:
                state._drop(other)
    if added:
        for w in key:
            state.incident.setdefault(w, set()).add(key)

    # (c) halve until back under capacity
    while len(state.tracked) > state.capacity:
        state.level += 1
        for k in list(state.tracked):
            if rng.getrandbits(1) == 0:
                state._drop(k)

    # (d)
    state.running_max = max(state.running_max, len(state.tracked) << state.level)
    state.peak_tracked = max(state.peak_tracked, len(state.tracked))
    state.edges_seen += 1
    return state


def finalize(state: SamplerState) -> int:
    return state.running_max


def run(
    stream: EdgeStream | Iterable[Edge],
    config: EstimatorConfig,
    observer: Callable[[int, SamplerState], None] | None = None,
) -> int:
    """Feed ``stream`` through a fresh state and return the estimate.

    ``observer(t, state)`` is called after the t-th edge is fully processed.
    """
    return run_state(stream, config, observer).running_max


def run_state(
    stream: EdgeStream | Iterable[Edge],
    config: EstimatorConfig,
    observer: Callable[[int, SamplerState], None] | None = None,
) -> SamplerState:
    if isinstance(stream, EdgeStream) and stream.n > config.n:
        raise InvalidConfig("n", f"stream declares n={stream.n} > config n={config.n}")
    state = init(config)
    for t, e in enumerate(stream, start=1):
        process_edge(state, e)
        if observer is not None:
            observer(t, state)
    return state


@dataclass(frozen=True)
class MatchingEstimate:
    estimate: int
    lower: Fraction
    upper: Fraction


def _exact(x: float) -> Fraction:
    # 0.2 -> 1/5 rather than the binary expansion
    return Fraction(repr(x))


def matching_bounds(estimate: int, alpha: int, epsilon: float) -> MatchingEstimate:
    eps = _exact(epsilon)
    lower = Fraction(estimate) / ((1 + eps) * (alpha + 2))
    upper = Fraction(estimate) / (1 - eps)
    return MatchingEstimate(estimate, lower, upper)


def estimate_matching(stream: EdgeStream, config: EstimatorConfig) -> MatchingEstimate:
    """Estimate plus the interval it implies for the maximum matching size.

    Whenever the estimate is within a factor 1 +/- epsilon of the true best
    prefix count, the maximum matching size lies in [lower, upper].
    """
    return matching_bounds(run(stream, config), config.alpha, config.epsilon)
