"""Graph representations: the infinite quadrant graph as a lazy oracle, explicit
finite graphs, truncations, generators, and the text serialization format.

The playing field is the set of lattice points (x, y) with natural coordinates,
origin excluded.  Two vertices are adjacent when they share an axis or when one
is strictly up-and-left of the other (equivalently strictly down-and-right).
The axes act as highways: any two vertices on the same axis are adjacent.
"""

from __future__ import annotations

import hashlib
import json
import random
from typing import Iterable, NamedTuple, Optional, Protocol, Sequence, Union

U64_MAX = 2**64 - 1


class CoordinateOverflowError(OverflowError):
    """A coordinate left the 64-bit natural range; never wrap, always fail."""


class _VertexBase(NamedTuple):
    x: int
    y: int


class Vertex(_VertexBase):
    """A lattice point with natural coordinates.  Orders lexicographically."""

    __slots__ = ()

    def __new__(cls, x: int, y: int) -> "Vertex":
        if x < 0 or y < 0:
            raise ValueError(f"coordinates must be natural numbers, got ({x}, {y})")
        if x > U64_MAX or y > U64_MAX:
            raise CoordinateOverflowError(f"coordinate exceeds 64-bit range: ({x}, {y})")
        return tuple.__new__(cls, (x, y))

    def reflected(self) -> "Vertex":
        """Mirror image across the diagonal x = y."""
        return Vertex(self.y, self.x)

    def is_origin(self) -> bool:
        return self.x == 0 and self.y == 0


ORIGIN = (0, 0)


class Box(NamedTuple):
    """Inclusive coordinate window [x0..x1] x [y0..y1]."""

    x0: int
    y0: int
    x1: int
    y1: int

    def contains(self, v: Vertex) -> bool:
        return self.x0 <= v.x <= self.x1 and self.y0 <= v.y <= self.y1

    def clamped(self, lo: int = 0, hi: int = U64_MAX) -> "Box":
        return Box(max(self.x0, lo), max(self.y0, lo), min(self.x1, hi), min(self.y1, hi))

    @property
    def area(self) -> int:
        if self.x1 < self.x0 or self.y1 < self.y0:
            return 0
        return (self.x1 - self.x0 + 1) * (self.y1 - self.y0 + 1)


class GraphOracle(Protocol):
    """Adjacency/containment contract usable for infinite graphs.

    ``adjacent`` is symmetric and irreflexive; "stay" is a game rule, not an
    edge, so callers wanting closed neighborhoods add the vertex themselves.
    """

    def contains(self, v: Vertex) -> bool: ...

    def adjacent(self, u: Vertex, v: Vertex) -> bool: ...

    def neighbors_within(self, v: Vertex, window: Box) -> list[Vertex]: ...


def quadrant_adjacent(u: Vertex, v: Vertex) -> bool:
    """Adjacency rule of the quadrant graph.

    True iff both vertices sit on the y-axis, both sit on the x-axis, or one is
    strictly up-and-left of the other.  Irreflexive.  Rejects the origin.
    """
    if u.is_origin() or v.is_origin():
        raise ValueError("the origin is not a vertex of the quadrant graph")
    if u == v:
        return False
    if u.x == 0 and v.x == 0:
        return True
    if u.y == 0 and v.y == 0:
        return True
    return (u.x < v.x and u.y > v.y) or (u.x > v.x and u.y < v.y)


class QuadrantGraph:
    """The infinite quadrant graph as a lazy adjacency oracle."""

    name = "quadrant"

    def contains(self, v: Vertex) -> bool:
        return not v.is_origin()

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return quadrant_adjacent(u, v)

    def neighbors_within(self, v: Vertex, window: Box) -> list[Vertex]:
        """All neighbors of ``v`` inside ``window``, sorted lexicographically.

        Enumerates only the candidate regions (axis lines and the two strict
        quadrants), never the whole window.
        """
        if not self.contains(v):
            raise ValueError(f"{v} is not a vertex of the quadrant graph")
        w = window.clamped()
        found: set[Vertex] = set()
        if v.y == 0:  # x-axis mates
            if w.y0 <= 0 <= w.y1:
                for x in range(max(w.x0, 1), w.x1 + 1):
                    if x != v.x:
                        found.add(Vertex(x, 0))
        if v.x == 0:  # y-axis mates
            if w.x0 <= 0 <= w.x1:
                for y in range(max(w.y0, 1), w.y1 + 1):
                    if y != v.y:
                        found.add(Vertex(0, y))
        # strictly up-and-left of v
        for x in range(w.x0, min(w.x1, v.x - 1) + 1):
            for y in range(max(w.y0, v.y + 1), w.y1 + 1):
                if (x, y) != ORIGIN:
                    found.add(Vertex(x, y))
        # strictly down-and-right of v
        for x in range(max(w.x0, v.x + 1), w.x1 + 1):
            for y in range(w.y0, min(w.y1, v.y - 1) + 1):
                if (x, y) != ORIGIN:
                    found.add(Vertex(x, y))
        return sorted(found)


QUADRANT = QuadrantGraph()

Label = Union[Vertex, str]


class GraphFormatError(ValueError):
    """Malformed graph document; carries a human-readable position hint."""


class FiniteGraph:
    """Explicit finite graph: dense integer ids, sorted adjacency lists.

    Vertices may carry coordinate labels (lattice points, ordered
    lexicographically) or opaque string labels.  Immutable after construction.
    """

    def __init__(self, labels: Sequence[Label], edges: Iterable[tuple[int, int]], name: str = ""):
        self.labels: tuple[Label, ...] = tuple(labels)
        self.name = name
        self.has_coords = all(isinstance(l, Vertex) for l in self.labels)
        if self.has_coords and list(self.labels) != sorted(self.labels):
            raise ValueError("coordinate-labelled vertices must be in lexicographic order")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        n = len(self.labels)
        nbrs: list[set[int]] = [set() for _ in range(n)]
        seen = set()
        for pos, (i, j) in enumerate(edges):
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"edge {pos}: id out of range: ({i}, {j})")
            if i == j:
                raise GraphFormatError(f"edge {pos}: self-loop at {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphFormatError(f"edge {pos}: duplicate edge {key}")
            seen.add(key)
            nbrs[i].add(j)
            nbrs[j].add(i)
        self.neighbors: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._index = {label: i for i, label in enumerate(self.labels)}
        self._closed = tuple(tuple(sorted(s | {i})) for i, s in enumerate(nbrs))
        self._hash: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.neighbors) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors[i] if i < j]

    def contains(self, i: int) -> bool:
        return isinstance(i, int) and 0 <= i < self.n

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.neighbors[i] if 0 <= i < self.n and 0 <= j < self.n else False

    def closed_neighbors(self, i: int) -> tuple[int, ...]:
        return self._closed[i]

    def id_of(self, label: Label) -> int:
        return self._index[label]

    def vertex_at(self, i: int) -> Label:
        return self.labels[i]

    def label_str(self, i: int) -> str:
        l = self.labels[i]
        return f"({l.x},{l.y})" if isinstance(l, Vertex) else str(l)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteGraph)
            and self.labels == other.labels
            and self.neighbors == other.neighbors
        )

    def __repr__(self) -> str:
        tag = self.name or "graph"
        return f"<FiniteGraph {tag}: {self.n} vertices, {self.edge_count} edges>"

    def content_hash(self) -> str:
        """Hex digest of the canonical serialization; keys solver caches."""
        if self._hash is None:
            self._hash = hashlib.sha256(serialize_graph(self).encode()).hexdigest()
        return self._hash

    def oracle(self) -> "FiniteGraphOracle":
        if not self.has_coords:
            raise TypeError("oracle view requires coordinate labels")
        return FiniteGraphOracle(self)


class FiniteGraphOracle:
    """Coordinate-keyed oracle view of a coordinate-labelled FiniteGraph."""

    def __init__(self, graph: FiniteGraph):
        self.graph = graph
        self.name = graph.name or "finite"

    def contains(self, v: Vertex) -> bool:
        return v in self.graph._index

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        gi = self.graph._index
        if u not in gi or v not in gi:
            return False
        return self.graph.adjacent(gi[u], gi[v])

    def neighbors_within(self, v: Vertex, window: Box) -> list[Vertex]:
        i = self.graph._index[v]
        out = [self.graph.labels[j] for j in self.graph.neighbors[i]]
        return [u for u in out if window.contains(u)]


def induced_subgraph(oracle: GraphOracle, vertices: Iterable[Vertex], name: str = "") -> FiniteGraph:
    """Explicit graph with exactly the oracle's edges among ``vertices``.

    An empty vertex set yields the empty graph (solvers require a vertex, the
    text format requires one, but the induced-subgraph operation itself is
    total).
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not oracle.contains(v):
            raise ValueError(f"{v} is not a vertex of the oracle graph")
    edges = [
        (i, j)
        for i in range(len(vs))
        for j in range(i + 1, len(vs))
        if oracle.adjacent(vs[i], vs[j])
    ]
    return FiniteGraph(vs, edges, name=name)


def triangular_truncation(k: int) -> FiniteGraph:
    """Induced subgraph on {(a, b): a + b <= k}, origin excluded.

    The canonical finite family: prefixes of the axis-then-diagonal
    construction order.  Connected for every k >= 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vs = [
        Vertex(a, b)
        for a in range(k + 1)
        for b in range(k + 1 - a)
        if (a, b) != ORIGIN
    ]
    return induced_subgraph(QUADRANT, vs, name=f"tri:{k}")


def square_truncation(n: int) -> FiniteGraph:
    """Induced subgraph on {0..n} x {0..n}, origin excluded.

    Kept for experiments only; may be disconnected (the far corner (n, n) is
    isolated for n >= 1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    vs = [Vertex(a, b) for a in range(n + 1) for b in range(n + 1) if (a, b) != ORIGIN]
    return induced_subgraph(QUADRANT, vs, name=f"sq:{n}")


def path_graph(m: int) -> FiniteGraph:
    """Path on m vertices labelled v0..v{m-1}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return FiniteGraph([f"v{i}" for i in range(m)], [(i, i + 1) for i in range(m - 1)], name=f"p{m}")


def random_connected_graph(n: int, p: float, seed: int) -> FiniteGraph:
    """Seeded random connected simple graph on n vertices.

    Built as a uniform random spanning tree (random attachment) plus each
    non-tree edge independently with probability p; always connected, always
    the same graph for the same (n, p, seed).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be a probability")
    rng = random.Random((n, round(p * 10**9), seed).__repr__())
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for idx in range(1, n):
        a, b = order[idx], order[rng.randrange(idx)]
        edges.add((min(a, b), max(a, b)))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < p:
                edges.add((i, j))
    return FiniteGraph([f"v{i}" for i in range(n)], sorted(edges), name=f"rand:{n}:{seed}")


GRAPH_FORMAT_VERSION = 1


def serialize_graph(g: FiniteGraph) -> str:
    """Canonical single-document text form; see parse_graph for the schema."""
    if g.has_coords:
        vertices = [[v.x, v.y] for v in g.labels]
    else:
        vertices = list(g.labels)
    doc = {"version": GRAPH_FORMAT_VERSION, "vertices": vertices, "edges": g.edges()}
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def parse_graph(text: str, name: str = "") -> FiniteGraph:
    """Parse the graph text format.

    Schema: {"version": 1, "vertices": [[x,y], ...] or ["v0", ...],
    "edges": [[i, j], ...]} with i < j and no duplicates.  All violations
    raise GraphFormatError with a position hint.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON at position {e.pos}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise GraphFormatError("top level must be an object")
    if doc.get("version") != GRAPH_FORMAT_VERSION:
        raise GraphFormatError(f"unsupported version: {doc.get('version')!r}")
    raw_vs = doc.get("vertices")
    if not isinstance(raw_vs, list) or not raw_vs:
        raise GraphFormatError("'vertices' must be a non-empty list")
    labels: list[Label] = []
    for i, rv in enumerate(raw_vs):
        if isinstance(rv, str):
            labels.append(rv)
        elif isinstance(rv, list) and len(rv) == 2 and all(isinstance(c, int) for c in rv):
            try:
                labels.append(Vertex(rv[0], rv[1]))
            except ValueError as e:
                raise GraphFormatError(f"vertex {i}: {e}") from e
        else:
            raise GraphFormatError(f"vertex {i}: expected [x, y] or string, got {rv!r}")
    raw_es = doc.get("edges")
    if not isinstance(raw_es, list):
        raise GraphFormatError("'edges' must be a list")
    edges = []
    for pos, re_ in enumerate(raw_es):
        if not (isinstance(re_, list) and len(re_) == 2 and all(isinstance(c, int) for c in re_)):
            raise GraphFormatError(f"edge {pos}: expected [i, j], got {re_!r}")
        i, j = re_
        if not i < j:
            raise GraphFormatError(f"edge {pos}: require i < j, got ({i}, {j})")
        edges.append((i, j))
    try:
        return FiniteGraph(labels, edges, name=name)
    except GraphFormatError:
        raise
    except ValueError as e:
        raise GraphFormatError(str(e)) from e
