"""Finite directed multigraphs: model, shadowed graphs, named families, and
the surgeries (regularize, glue, loop attachment) used to build fractal graphs.

Graphs are immutable value objects. Parallel edges and loops are first-class:
every edge carries its own id, so k parallel copies of an edge are k distinct
edges. All operations are pure functions returning new graphs.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .errors import GraphError, ParameterError, UnknownVertexError


@dataclass(frozen=True)
class EdgeRecord:
    """A directed edge `src -> dst` with a graph-unique id."""

    id: str
    src: str
    dst: str

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


class VertexDegrees(NamedTuple):
    out_degree: int
    in_degree: int
    total: int


def _check_token(token: str, role: str) -> None:
    if not isinstance(token, str) or not token:
        raise GraphError(f"{role} must be a nonempty string, got {token!r}")


@dataclass(frozen=True)
class DirectedGraph:
    """A finite directed multigraph.

    Invariants enforced at construction: vertex ids are unique, edge ids are
    unique, edge endpoints are declared vertices, and the vertex and edge id
    sets are disjoint. Declaration order of vertices and edges is preserved
    and significant for serialization and derived labelings.
    """

    name: str
    vertices: tuple[str, ...]
    edges: tuple[EdgeRecord, ...]
    _out: dict[str, tuple[EdgeRecord, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _in: dict[str, tuple[EdgeRecord, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _edge_by_id: dict[str, EdgeRecord] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        vertex_set = set()
        for v in self.vertices:
            _check_token(v, "vertex id")
            if v in vertex_set:
                raise GraphError(f"duplicate vertex id {v!r} in graph {self.name!r}")
            vertex_set.add(v)
        edge_ids = set()
        outgoing: dict[str, list[EdgeRecord]] = {v: [] for v in self.vertices}
        incoming: dict[str, list[EdgeRecord]] = {v: [] for v in self.vertices}
        for e in self.edges:
            _check_token(e.id, "edge id")
            if e.id in edge_ids:
                raise GraphError(f"duplicate edge id {e.id!r} in graph {self.name!r}")
            if e.id in vertex_set:
                raise GraphError(
                    f"edge id {e.id!r} collides with a vertex id in graph {self.name!r}"
                )
            edge_ids.add(e.id)
            if e.src not in vertex_set:
                raise GraphError(f"edge {e.id!r} has undeclared source {e.src!r}")
            if e.dst not in vertex_set:
                raise GraphError(f"edge {e.id!r} has undeclared target {e.dst!r}")
            outgoing[e.src].append(e)
            incoming[e.dst].append(e)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in outgoing.items()})
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in incoming.items()})
        object.__setattr__(self, "_edge_by_id", {e.id: e for e in self.edges})

    def contains_edge(self, edge: EdgeRecord) -> bool:
        return self._edge_by_id.get(edge.id) == edge

    def require_vertex(self, v: str) -> None:
        if v not in self._out:
            raise UnknownVertexError(f"vertex {v!r} not in graph {self.name!r}")

    def out_edges(self, v: str) -> tuple[EdgeRecord, ...]:
        self.require_vertex(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[EdgeRecord, ...]:
        self.require_vertex(v)
        return self._in[v]

    def degrees(self, v: str) -> VertexDegrees:
        """Out-, in-, and total degree of `v`; a loop adds 1 to each side."""
        self.require_vertex(v)
        out = len(self._out[v])
        inc = len(self._in[v])
        return VertexDegrees(out, inc, out + inc)

    def edge_multiplicities(self) -> Counter:
        """Multiset of (src, dst) pairs; the key datum for isomorphism search."""
        return Counter((e.src, e.dst) for e in self.edges)


def degrees(graph: DirectedGraph, v: str) -> VertexDegrees:
    return graph.degrees(v)


@dataclass(frozen=True)
class SignedEdge:
    """An edge of the shadowed graph: a base edge traversed forward, or its
    shadow (the same edge traversed backward)."""

    edge: EdgeRecord
    inverted: bool = False

    @property
    def source(self) -> str:
        return self.edge.dst if self.inverted else self.edge.src

    @property
    def target(self) -> str:
        return self.edge.src if self.inverted else self.edge.dst

    @property
    def token(self) -> str:
        """Display id: the edge id, with a `~` suffix for the shadow."""
        return self.edge.id + "~" if self.inverted else self.edge.id

    def inverse(self) -> SignedEdge:
        return SignedEdge(self.edge, not self.inverted)


@dataclass(frozen=True)
class ShadowedGraph:
    """A graph together with its shadow: one forward and one inverted arc per
    base edge, so every vertex gains its in-edges as extra out-arcs."""

    base: DirectedGraph
    arcs: tuple[SignedEdge, ...]
    _arcs_from: dict[str, tuple[SignedEdge, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        table: dict[str, list[SignedEdge]] = {v: [] for v in self.base.vertices}
        for arc in self.arcs:
            table[arc.source].append(arc)
        object.__setattr__(
            self, "_arcs_from", {v: tuple(a) for v, a in table.items()}
        )

    def arcs_from(self, v: str) -> tuple[SignedEdge, ...]:
        if v not in self._arcs_from:
            raise UnknownVertexError(f"vertex {v!r} not in graph {self.base.name!r}")
        return self._arcs_from[v]

    def as_graph(self) -> DirectedGraph:
        """The shadowed graph as a plain directed graph (arc tokens as ids)."""
        return DirectedGraph(
            name=f"shadow({self.base.name})",
            vertices=self.base.vertices,
            edges=tuple(
                EdgeRecord(arc.token, arc.source, arc.target) for arc in self.arcs
            ),
        )


def shadow(graph: DirectedGraph) -> ShadowedGraph:
    """Build the shadowed graph: all forward arcs followed by all shadows,
    both in edge declaration order."""
    forward = tuple(SignedEdge(e, False) for e in graph.edges)
    backward = tuple(SignedEdge(e, True) for e in graph.edges)
    return ShadowedGraph(base=graph, arcs=forward + backward)


FAMILY_KINDS = ("loops", "circulant", "complete", "path", "star")

_FAMILY_ALIASES = {
    "loops": "loops",
    "one-vertex-loops": "loops",
    "circulant": "circulant",
    "complete": "complete",
    "path": "path",
    "linear-path": "path",
    "star": "star",
    "two-vertex-tree": "star",
}


def family(kind: str, n: int) -> DirectedGraph:
    """Named graph families.

    loops     - one vertex with n loop edges
    circulant - n vertices in a single directed cycle (requires n >= 2)
    complete  - n vertices, one edge for every ordered pair of distinct
                vertices (requires n >= 2)
    path      - a directed chain on n vertices (finite stand-in for the
                doubly infinite line; its endpoints break fractality)
    star      - a root with n out-edges to n fresh leaves; star(1) is the
                two-vertices-one-edge graph, star(2) the three-vertex fork
                used as the standard non-fractal tree example
    """
    canonical = _FAMILY_ALIASES.get(kind)
    if canonical is None:
        raise ParameterError(f"unknown family {kind!r}; expected one of {FAMILY_KINDS}")
    if n < 1:
        raise ParameterError(f"family size must be >= 1, got {n}")
    if canonical in ("circulant", "complete") and n < 2:
        raise ParameterError(f"family {canonical!r} requires n >= 2, got {n}")

    if canonical == "loops":
        v = "v1"
        return DirectedGraph(
            f"O{n}", (v,), tuple(EdgeRecord(f"e{j}", v, v) for j in range(1, n + 1))
        )
    if canonical == "circulant":
        vs = tuple(f"v{j}" for j in range(1, n + 1))
        es = tuple(
            EdgeRecord(f"e{j}", f"v{j}", f"v{j % n + 1}") for j in range(1, n + 1)
        )
        return DirectedGraph(f"K{n}", vs, es)
    if canonical == "complete":
        vs = tuple(f"v{j}" for j in range(1, n + 1))
        es = tuple(
            EdgeRecord(f"e{i}_{j}", f"v{i}", f"v{j}")
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if i != j
        )
        return DirectedGraph(f"C{n}", vs, es)
    if canonical == "path":
        vs = tuple(f"v{j}" for j in range(1, n + 1))
        es = tuple(
            EdgeRecord(f"e{j}", f"v{j}", f"v{j + 1}") for j in range(1, n)
        )
        return DirectedGraph(f"P{n}", vs, es)
    # star
    vs = ("v1",) + tuple(f"v{j}" for j in range(2, n + 2))
    es = tuple(EdgeRecord(f"e{j}", "v1", f"v{j + 1}") for j in range(1, n + 1))
    return DirectedGraph(f"T{n}_1", vs, es)


def regularize(graph: DirectedGraph, k: int) -> DirectedGraph:
    """Replace every edge by k parallel copies (ids `<old>#1` .. `<old>#k`)."""
    if k < 1:
        raise ParameterError(f"regularization multiplicity must be >= 1, got {k}")
    edges = tuple(
        EdgeRecord(f"{e.id}#{j}", e.src, e.dst)
        for e in graph.edges
        for j in range(1, k + 1)
    )
    return DirectedGraph(f"R{k}({graph.name})", graph.vertices, edges)


def _fresh_id(candidate: str, taken: set[str]) -> str:
    while candidate in taken:
        candidate += "'"
    taken.add(candidate)
    return candidate


def glue(
    g1: DirectedGraph, v1: str, g2: DirectedGraph, v2: str
) -> DirectedGraph:
    """Identify `v1` in `g1` with `v2` in `g2`.

    The glued vertex keeps `v1`'s id; ids from `g2` that collide with ids
    already present are disambiguated with trailing apostrophes, so the
    result is deterministic in the declaration orders of both graphs.
    """
    g1.require_vertex(v1)
    g2.require_vertex(v2)
    taken = set(g1.vertices) | {e.id for e in g1.edges}
    vertex_rename = {v2: v1}
    vertices = list(g1.vertices)
    for v in g2.vertices:
        if v == v2:
            continue
        fresh = _fresh_id(v, taken)
        vertex_rename[v] = fresh
        vertices.append(fresh)
    edges = list(g1.edges)
    for e in g2.edges:
        fresh = _fresh_id(e.id, taken)
        edges.append(EdgeRecord(fresh, vertex_rename[e.src], vertex_rename[e.dst]))
    return DirectedGraph(f"{g1.name}#{g2.name}", tuple(vertices), tuple(edges))


def iterated_glue_loops(graph: DirectedGraph, n: int) -> DirectedGraph:
    """Attach n fresh loops at every vertex (glue a one-vertex-n-loop graph
    onto each vertex in turn)."""
    if n < 1:
        raise ParameterError(f"loop count must be >= 1, got {n}")
    if not graph.vertices:
        raise ParameterError("cannot attach loops to an empty graph")
    taken = set(graph.vertices) | {e.id for e in graph.edges}
    edges = list(graph.edges)
    for v in graph.vertices:
        for j in range(1, n + 1):
            edges.append(EdgeRecord(_fresh_id(f"{v}_loop{j}", taken), v, v))
    return DirectedGraph(f"{graph.name}#O{n}", graph.vertices, tuple(edges))


def is_connected(graph: DirectedGraph) -> bool:
    """True iff the underlying undirected multigraph is connected.

    The empty graph counts as disconnected; a single isolated vertex is
    connected.
    """
    if not graph.vertices:
        return False
    neighbors: dict[str, set[str]] = {v: set() for v in graph.vertices}
    for e in graph.edges:
        neighbors[e.src].add(e.dst)
        neighbors[e.dst].add(e.src)
    seen = {graph.vertices[0]}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(graph.vertices)


# --- canonical JSON form ---------------------------------------------------

_GRAPH_KEYS = {"name", "vertices", "edges"}
_EDGE_KEYS = {"id", "src", "dst"}


def graph_to_json(graph: DirectedGraph) -> dict:
    return {
        "name": graph.name,
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in graph.edges],
    }


def graph_from_json(obj: object) -> DirectedGraph:
    if not isinstance(obj, dict):
        raise GraphError("graph JSON must be an object")
    unknown = set(obj) - _GRAPH_KEYS
    if unknown:
        raise GraphError(f"unknown graph keys: {sorted(unknown)}")
    missing = _GRAPH_KEYS - set(obj)
    if missing:
        raise GraphError(f"missing graph keys: {sorted(missing)}")
    name, vertices, edges = obj["name"], obj["vertices"], obj["edges"]
    if not isinstance(name, str):
        raise GraphError("graph name must be a string")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphError("vertices must be a list of strings")
    if not isinstance(edges, list):
        raise GraphError("edges must be a list")
    records = []
    for entry in edges:
        if not isinstance(entry, dict):
            raise GraphError("each edge must be an object")
        unknown = set(entry) - _EDGE_KEYS
        if unknown:
            raise GraphError(f"unknown edge keys: {sorted(unknown)}")
        missing = _EDGE_KEYS - set(entry)
        if missing:
            raise GraphError(f"edge missing keys: {sorted(missing)}")
        if not all(isinstance(entry[k], str) for k in ("id", "src", "dst")):
            raise GraphError("edge id/src/dst must be strings")
        records.append(EdgeRecord(entry["id"], entry["src"], entry["dst"]))
    return DirectedGraph(name, tuple(vertices), tuple(records))


def save_graph(graph: DirectedGraph, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(graph_to_json(graph), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def load_graph(path: str | Path) -> DirectedGraph:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed graph JSON in {path}: {exc}") from exc
    return graph_from_json(obj)
