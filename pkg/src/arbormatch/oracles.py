"""Brute-force reference values for the good-edge quantities of an edge stream.

Everything here holds the full stream in memory and recomputes from scratch;
these functions are ground truth for the streaming estimator, not a
replacement for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Edge, EdgeStream


class PrefixOutOfRange(ValueError):
    pass


def tail_degrees(s: EdgeStream) -> list[tuple[int, int]]:
    """For each position, how many strictly later edges touch ``u`` and ``v``."""
    later: dict[int, int] = {}
    out = [(0, 0)] * len(s.edges)
    for j in range(len(s.edges) - 1, -1, -1):
        e = s.edges[j]
        out[j] = (later.get(e.u, 0), later.get(e.v, 0))
        later[e.u] = later.get(e.u, 0) + 1
        later[e.v] = later.get(e.v, 0) + 1
    return out


def exact_e_alpha(s: EdgeStream, alpha: int) -> tuple[int, set[Edge]]:
    good = {
        e
        for e, (a, b) in zip(s.edges, tail_degrees(s))
        if a <= alpha and b <= alpha
    }
    return len(good), good


def exact_e_alpha_prefix(s: EdgeStream, alpha: int, t: int) -> int:
    if not 1 <= t <= len(s.edges):
        raise PrefixOutOfRange(f"t={t} outside 1..{len(s.edges)}")
    return exact_e_alpha(s.prefix(t), alpha)[0]


@dataclass(frozen=True)
class PrefixProfile:
    e_alpha_t: tuple[int, ...]  # index t-1 holds |E_alpha| of the length-t prefix
    e_star: int
    argmax_t: int  # smallest maximising prefix length; 0 for an empty stream


def exact_e_star(s: EdgeStream, alpha: int) -> PrefixProfile:
    profile = tuple(exact_e_alpha_prefix(s, alpha, t) for t in range(1, len(s.edges) + 1))
    if not profile:
        return PrefixProfile((), 0, 0)
    best = max(profile)
    return PrefixProfile(profile, best, profile.index(best) + 1)


@dataclass(frozen=True)
class DiagnosticReport:
    """Heavy/good/wasted bookkeeping for one stream and threshold.

    ``w``, ``x`` and ``y`` count good edges with zero, one and two heavy
    endpoints; ``z`` counts heavy-heavy edges kept by exactly one endpoint's
    last-(alpha+1) window.  ``e_l`` counts edges with no heavy endpoint.
    """

    alpha: int
    heavy: frozenset[int]
    w: int
    x: int
    y: int
    z: int
    e_l: int
    e_alpha: int

    def identity_violations(self) -> list[str]:
        """Identities that must hold for any stream."""
        bad = []
        if self.e_alpha != self.w + self.x + self.y:
            bad.append(f"e_alpha={self.e_alpha} != w+x+y={self.w + self.x + self.y}")
        if self.w != self.e_l:
            bad.append(f"w={self.w} != e_l={self.e_l}")
        lhs = self.x + 2 * self.y + self.z
        rhs = (self.alpha + 1) * len(self.heavy)
        if lhs != rhs:
            bad.append(f"x+2y+z={lhs} != (alpha+1)|H|={rhs}")
        return bad

    def arboricity_violations(self) -> list[str]:
        """Inequalities that must hold when arboricity <= alpha."""
        bad = []
        h = len(self.heavy)
        if self.y + self.z > self.alpha * h:
            bad.append(f"y+z={self.y + self.z} > alpha|H|={self.alpha * h}")
        if self.x + self.y < h:
            bad.append(f"x+y={self.x + self.y} < |H|={h}")
        return bad


def classify_edges(s: EdgeStream, alpha: int) -> DiagnosticReport:
    degree: dict[int, int] = {}
    for e in s.edges:
        degree[e.u] = degree.get(e.u, 0) + 1
        degree[e.v] = degree.get(e.v, 0) + 1
    heavy = frozenset(v for v, d in degree.items() if d >= alpha + 1)

    # last alpha+1 edges at each heavy vertex, by stream position
    window: dict[int, set[int]] = {u: set() for u in heavy}
    for j in range(len(s.edges) - 1, -1, -1):
        for w in s.edges[j]:
            if w in heavy and len(window[w]) < alpha + 1:
                window[w].add(j)

    def kept(w: int, j: int) -> bool:
        return w not in heavy or j in window[w]

    w_ = x = y = z = e_l = 0
    for j, e in enumerate(s.edges):
        n_heavy = (e.u in heavy) + (e.v in heavy)
        ku, kv = kept(e.u, j), kept(e.v, j)
        if n_heavy == 0:
            e_l += 1
        if ku and kv:
            if n_heavy == 0:
                w_ += 1
            elif n_heavy == 1:
                x += 1
            else:
                y += 1
        elif n_heavy == 2 and ku != kv:
            z += 1
    # e_alpha comes from tail counts, so e_alpha == w+x+y is a real cross-check
    e_alpha = exact_e_alpha(s, alpha)[0]
    return DiagnosticReport(alpha, heavy, w_, x, y, z, e_l, e_alpha)
