"""Graph and edge-stream data model, ingestion, generators and exact oracles."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

DEFAULT_MATCHING_VERTEX_CAP = 24
DEFAULT_ARBORICITY_VERTEX_CAP = 15


class StreamError(ValueError):
    """Base class for malformed edge streams; ``position`` is the stream index."""

    kind = "invalid stream"

    def __init__(self, position: int, detail: str = ""):
        self.position = position
        msg = f"{self.kind} at position {position}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class SelfLoop(StreamError):
    kind = "self-loop"


class DuplicateEdge(StreamError):
    kind = "duplicate edge"


class VertexOutOfRange(StreamError):
    kind = "vertex out of range"


class InstanceTooLarge(ValueError):
    pass


class EmptyGraph(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, line: int, detail: str):
        self.line = line
        super().__init__(f"line {line}: {detail}")


class Edge:
    """Undirected edge.

    Endpoint order is kept as given (``u`` first), but two edges compare and
    hash equal whenever they join the same pair of vertices.
    """

    __slots__ = ("u", "v", "_key")

    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v
        self._key = (u, v) if u <= v else (v, u)

    @property
    def key(self) -> tuple[int, int]:
        return self._key

    def touches(self, w: int) -> bool:
        return w == self.u or w == self.v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Edge):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __iter__(self):
        yield self.u
        yield self.v

    def __repr__(self) -> str:
        return f"Edge({self.u}, {self.v})"


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for e in self.edges:
            deg[e.u] = deg.get(e.u, 0) + 1
            deg[e.v] = deg.get(e.v, 0) + 1
        return deg


@dataclass(frozen=True)
class EdgeStream:
    edges: tuple[Edge, ...]
    n: int

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def prefix(self, t: int) -> EdgeStream:
        return EdgeStream(self.edges[:t], self.n)

    def graph(self) -> Graph:
        return Graph(self.n, frozenset(self.edges))

    def pairs(self) -> list[tuple[int, int]]:
        return [(e.u, e.v) for e in self.edges]


def validate_stream(
    raw: Iterable[tuple[int, int]], n: int, allow_duplicates: bool = False
) -> EdgeStream:
    """Check and wrap raw vertex pairs, keeping their order.

    Raises the first of SelfLoop, DuplicateEdge or VertexOutOfRange found.
    With ``allow_duplicates`` repeated edges are dropped instead.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    seen: set[tuple[int, int]] = set()
    out = []
    for pos, (u, v) in enumerate(raw):
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(pos, f"({u}, {v}) with n={n}")
        if u == v:
            raise SelfLoop(pos, f"({u}, {v})")
        e = Edge(u, v)
        if e.key in seen:
            if allow_duplicates:
                continue
            raise DuplicateEdge(pos, f"({u}, {v})")
        seen.add(e.key)
        out.append(e)
    return EdgeStream(tuple(out), n)


# -- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> tuple[list[tuple[int, int]], list[int], int | None]:
    """Parse edge-list text into (pairs, line numbers, declared n or None)."""
    pairs: list[tuple[int, int]] = []
    lines: list[int] = []
    declared = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("n="):
                try:
                    declared = int(body[2:])
                except ValueError:
                    raise ParseError(lineno, f"bad header {stripped!r}") from None
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise ParseError(lineno, f"expected two integers, got {stripped!r}")
        try:
            u, v = int(fields[0], 10), int(fields[1], 10)
        except ValueError:
            raise ParseError(lineno, f"expected two integers, got {stripped!r}") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "vertex ids must be non-negative")
        pairs.append((u, v))
        lines.append(lineno)
    return pairs, lines, declared


def loads(text: str, n: int | None = None) -> tuple[EdgeStream, bool]:
    """Parse and validate edge-list text.

    ``n`` overrides the header.  Without either, n is inferred as
    ``max id + 1``; the second return value reports whether that happened.
    Stream errors are re-raised as ParseError naming the source line.
    """
    pairs, lines, declared = parse_edge_list(text)
    inferred = False
    if n is None:
        n = declared
    if n is None:
        n = max((max(p) for p in pairs), default=0) + 1
        inferred = True
    try:
        return validate_stream(pairs, n), inferred
    except StreamError as err:
        raise ParseError(lines[err.position], str(err)) from err


def load(path: str | Path, n: int | None = None) -> tuple[EdgeStream, bool]:
    return loads(Path(path).read_text(encoding="ascii"), n)


def dumps(stream: EdgeStream) -> str:
    body = "".join(f"{e.u} {e.v}\n" for e in stream.edges)
    return f"# n={stream.n}\n{body}"


def dump(stream: EdgeStream, path: str | Path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(stream))


# -- exact oracles -----------------------------------------------------------

def _adjacency(g: Graph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for e in g.edges:
        adj.setdefault(e.u, set()).add(e.v)
        adj.setdefault(e.v, set()).add(e.u)
    return adj


def _brute_matching(adj: dict[int, set[int]]) -> int:
    # Branch on the smallest remaining vertex: leave it unmatched or pair it
    # with each remaining neighbour.  Exhaustive, so valid for odd cycles.
    verts = sorted(adj)
    best = 0

    def search(remaining: frozenset[int], size: int) -> None:
        nonlocal best
        if size + len(remaining) // 2 <= best:
            return
        live = [x for x in verts if x in remaining and adj[x] & remaining]
        if not live:
            best = max(best, size)
            return
        x = live[0]
        rest = remaining - {x}
        for y in sorted(adj[x] & rest):
            search(rest - {y}, size + 1)
        search(rest, size)

    search(frozenset(verts), 0)
    return best


def maximum_matching_size(
    g: Graph, method: str = "brute", max_vertices: int = DEFAULT_MATCHING_VERTEX_CAP
) -> int:
    """Size of a maximum matching of ``g``.

    ``method="brute"`` runs an exhaustive search and refuses graphs with more
    than ``max_vertices`` non-isolated vertices.  ``method="blossom"`` uses
    networkx's Edmonds implementation and has no cap.
    """
    if method == "blossom":
        nxg = nx.Graph()
        nxg.add_edges_from(e.key for e in g.edges)
        return len(nx.max_weight_matching(nxg, maxcardinality=True))
    if method != "brute":
        raise ValueError(f"unknown matching method {method!r}")
    adj = _adjacency(g)
    if len(adj) > max_vertices:
        raise InstanceTooLarge(
            f"{len(adj)} non-isolated vertices exceeds brute-force cap {max_vertices}"
        )
    return _brute_matching(adj)


def exact_arboricity(g: Graph, max_vertices: int = DEFAULT_ARBORICITY_VERTEX_CAP) -> int:
    """Arboricity via the Nash-Williams density formula.

    Enumerates every vertex subset S with |S| >= 2 and returns the maximum of
    ceil(|E(S)| / (|S| - 1)).  Isolated vertices never raise the maximum and
    are dropped before enumerating.
    """
    if not g.edges:
        raise EmptyGraph("arboricity is undefined for a graph with no edges")
    adj = _adjacency(g)
    verts = sorted(adj)
    k = len(verts)
    if k > max_vertices:
        raise InstanceTooLarge(f"{k} non-isolated vertices exceeds cap {max_vertices}")
    index = {v: i for i, v in enumerate(verts)}
    nbr = [0] * k
    for v, ns in adj.items():
        for w in ns:
            nbr[index[v]] |= 1 << index[w]

    # count[mask] = edges inside mask, built by removing the lowest set bit.
    count = [0] * (1 << k)
    best = 0
    for mask in range(1, 1 << k):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        count[mask] = count[rest] + (nbr[i] & rest).bit_count()
        size = mask.bit_count()
        if size >= 2:
            best = max(best, -(-count[mask] // (size - 1)))
    return best


# -- generators --------------------------------------------------------------

def _random_spanning_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]


def generate_forest_union(n: int, alpha: int, seed: int | None) -> EdgeStream:
    """Random stream whose edges are a union of ``alpha`` random spanning trees.

    Edges repeated across trees are kept once, so arboricity is at most
    ``alpha``.  The stream order is a uniform shuffle.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    rng = random.Random(seed)
    seen: set[tuple[int, int]] = set()
    pairs = []
    for _ in range(alpha):
        for u, v in _random_spanning_tree(n, rng):
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                pairs.append((u, v))
    rng.shuffle(pairs)
    return validate_stream(pairs, n)


def shuffle_stream(s: EdgeStream, seed: int | None) -> EdgeStream:
    edges = list(s.edges)
    random.Random(seed).shuffle(edges)
    return EdgeStream(tuple(edges), s.n)


def stream_from_pairs(pairs: Sequence[tuple[int, int]], n: int | None = None) -> EdgeStream:
    """Convenience constructor; n defaults to max id + 1."""
    if n is None:
        n = max((max(p) for p in pairs), default=0) + 1
    return validate_stream(pairs, n)
