"""Game instances: weighted graphs whose vertices are trading agents.

An instance is an undirected simple graph with nonnegative integer edge
weights. The weight of an edge is the profit the two endpoint agents
generate if they trade; the worth of a coalition is the maximum-weight
matching among its members. Integer weights keep every downstream check
an exact integer or rational comparison; callers with rational weights
rescale by the common denominator (worths scale linearly and
allocations scale back).

Zero-weight edges are legal and retained: they impose (vacuous) cover
constraints and may appear in matchings with zero contribution.
Isolated vertices are legal and end up with zero profit.

The on-disk format is line oriented (UTF-8, `#` starts a comment line):

    p mg <n> <m>      header: n vertices, m edges
    e <u> <v> <w>     one line per edge, 1-based endpoints, integer weight
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InstanceFormatError

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class GameInstance:
    """An undirected simple graph with nonnegative integer edge weights.

    Vertex ids are 0-based and dense in `range(vertex_count)`. Edges are
    stored with endpoints normalized to `u < v`. Instances are immutable
    after construction and safe to share between threads.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        normalized = []
        seen = set()
        for (u, v, w) in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if w < 0:
                raise ValueError(f"negative weight on edge ({u}, {v})")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            normalized.append((u, v, int(w)))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbor, weight), ascending by neighbor."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for (u, v, w) in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for entry in adj:
            entry.sort()
        return adj


def parse_instance(text: str, name: str | None = None) -> GameInstance:
    """Parse the line-oriented instance format into a validated instance.

    Every rejection names the offending 1-based line: malformed header,
    bad edge line, self-loop, duplicate edge, negative weight, vertex id
    out of range, or an edge count that disagrees with the header.
    """
    n = m = None
    header_line = 0
    edges: list[Edge] = []
    edge_lines: list[int] = []
    seen: dict[tuple[int, int], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise InstanceFormatError(lineno, "duplicate header")
            if len(fields) != 4 or fields[1] != "mg":
                raise InstanceFormatError(lineno, f"malformed header: {line!r}")
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise InstanceFormatError(lineno, f"malformed header: {line!r}")
            if n < 0 or m < 0:
                raise InstanceFormatError(lineno, "negative count in header")
            header_line = lineno
        elif fields[0] == "e":
            if n is None:
                raise InstanceFormatError(lineno, "edge before header")
            if len(fields) != 4:
                raise InstanceFormatError(lineno, f"malformed edge line: {line!r}")
            try:
                u, v, w = int(fields[1]), int(fields[2]), int(fields[3])
            except ValueError:
                raise InstanceFormatError(lineno, f"malformed edge line: {line!r}")
            if w < 0:
                raise InstanceFormatError(lineno, f"negative weight {w}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceFormatError(lineno, f"vertex id out of range in {line!r}")
            if u == v:
                raise InstanceFormatError(lineno, f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceFormatError(
                    lineno, f"duplicate edge ({u}, {v}), first seen at line {seen[key]}")
            seen[key] = lineno
            edges.append((u - 1, v - 1, w))
            edge_lines.append(lineno)
        else:
            raise InstanceFormatError(lineno, f"unknown directive: {fields[0]!r}")

    if n is None:
        raise InstanceFormatError(1, "missing header")
    if len(edges) != m:
        if len(edges) > m:
            raise InstanceFormatError(
                edge_lines[m], f"more edge lines than the {m} declared")
        raise InstanceFormatError(
            header_line, f"header declares {m} edges but {len(edges)} found")
    return GameInstance(n, tuple(edges), name=name)


def serialize_instance(g: GameInstance) -> str:
    """Render an instance in the on-disk format; inverse of parse_instance."""
    lines = []
    if g.name:
        lines.append(f"# {g.name}")
    lines.append(f"p mg {g.vertex_count} {g.edge_count}")
    for (u, v, w) in g.edges:
        lines.append(f"e {u + 1} {v + 1} {w}")
    return "\n".join(lines) + "\n"


def load_instance(path) -> GameInstance:
    """Read and parse an instance file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def gen_gap_family(n: int, connected: bool = False) -> GameInstance:
    """Build the worst-case family for the relaxation's integrality gap.

    The instance has 2n disjoint unit-weight triangles (6n vertices, 6n
    edges). Its maximum matching has weight 2n while the fractional
    optimum is 3n, so the ratio is exactly 2/3 for every n. With
    `connected=True` a clique of weight-0 edges joins the first vertex
    of every triangle; zero weights stand in for the vanishing-weight
    connector and change neither optimum.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    edges: list[Edge] = []
    for t in range(2 * n):
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        edges += [(a, b, 1), (b, c, 1), (a, c, 1)]
    if connected:
        anchors = [3 * t for t in range(2 * n)]
        for i in range(len(anchors)):
            for j in range(i + 1, len(anchors)):
                edges.append((anchors[i], anchors[j], 0))
    suffix = "c" if connected else ""
    return GameInstance(6 * n, tuple(edges), name=f"gap_{n}{suffix}")


def gen_odd_cycle(k: int, weight: int = 1) -> GameInstance:
    """Cycle on 2k+1 vertices with every edge at the given weight."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    length = 2 * k + 1
    edges = tuple((i, (i + 1) % length, weight) for i in range(length))
    return GameInstance(length, edges, name=f"cycle_{length}_w{weight}")


def gen_random(n: int, edge_probability: Fraction, max_weight: int,
               seed: int, bipartite: bool = False) -> GameInstance:
    """Deterministic random instance for a fixed argument tuple.

    Each candidate vertex pair is included with the exact probability
    `edge_probability` (an integer Bernoulli draw, no floating point);
    included edges get a uniform weight in 1..max_weight. With
    `bipartite=True` the first ceil(n/2) vertices form one side and only
    cross pairs are candidates.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = Fraction(edge_probability)
    if not (0 <= p <= 1):
        raise ValueError("edge_probability must be in [0, 1]")
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    rng = random.Random(seed)
    left = (n + 1) // 2

    def candidates() -> Iterable[tuple[int, int]]:
        if bipartite:
            for u in range(left):
                for v in range(left, n):
                    yield (u, v)
        else:
            for u in range(n):
                for v in range(u + 1, n):
                    yield (u, v)

    edges: list[Edge] = []
    for (u, v) in candidates():
        if rng.randrange(p.denominator) < p.numerator:
            edges.append((u, v, rng.randint(1, max_weight)))
    kind = "bip" if bipartite else "rnd"
    return GameInstance(n, tuple(edges), name=f"{kind}_{n}_s{seed}")
