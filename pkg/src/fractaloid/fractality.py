"""Fractality of finite directed graphs: the degree characterization, vertex
trees (shadow unfoldings), rooted-tree comparison, fractal pairs, and the
partition of a graph corpus into spectral classes.

A connected graph is fractal when every vertex has out-degree and in-degree
equal to the maximal out-degree N; equivalently every vertex of the shadowed
graph has exactly 2N out-arcs, so every vertex tree unfolds into the
2N-regular tree. Pointwise out = in alone is weaker (a triangle with one
extra loop at a single vertex balances each vertex but has irregular vertex
trees) and does not qualify.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import (
    DisconnectedGraphError,
    LimitError,
    NotFractalError,
    ParameterError,
)
from .graphs import DirectedGraph, SignedEdge, is_connected, shadow

DEFAULT_MAX_TREE_NODES = 500_000

# Symbolic marker mirroring the infinite-vertex-count classification key;
# no operation on finite graphs ever emits it.
INFINITE: float = float("inf")


class FractalPair(NamedTuple):
    """Classification key of a fractal graph: (common degree, vertex count)."""

    n_zero: int
    n_sup: int | float


# A spectral class is keyed by exactly one fractal pair.
SpectralClassKey = FractalPair


def max_out_degree(graph: DirectedGraph) -> int:
    if not graph.vertices:
        raise ParameterError("max_out_degree of an empty graph is undefined")
    return max(graph.degrees(v).out_degree for v in graph.vertices)


def _first_degree_defect(graph: DirectedGraph, n: int) -> tuple[str, int, int] | None:
    for v in graph.vertices:
        out, inc, _ = graph.degrees(v)
        if out != n or inc != n:
            return (v, out, inc)
    return None


def is_fractal(graph: DirectedGraph) -> bool:
    """Degree characterization: out = in = N at every vertex.

    Requires a connected graph; an edgeless single vertex is connected but
    not fractal (there is no degree N >= 1 to realize).
    """
    if not is_connected(graph):
        raise DisconnectedGraphError(
            f"graph {graph.name!r} is empty or disconnected"
        )
    n = max_out_degree(graph)
    if n == 0:
        return False
    return _first_degree_defect(graph, n) is None


def fractal_pair(graph: DirectedGraph) -> FractalPair:
    """The pair (N, |V|) of a fractal graph."""
    if not is_connected(graph):
        raise DisconnectedGraphError(
            f"graph {graph.name!r} is empty or disconnected"
        )
    n = max_out_degree(graph)
    if n == 0:
        raise NotFractalError(f"graph {graph.name!r} has no edges")
    defect = _first_degree_defect(graph, n)
    if defect is not None:
        v, out, inc = defect
        raise NotFractalError(
            f"graph {graph.name!r} is not fractal: vertex {v!r} has "
            f"out-degree {out} and in-degree {inc}, expected {n} and {n}"
        )
    return FractalPair(n, len(graph.vertices))


@dataclass(frozen=True)
class TreeNode:
    vertex: str
    arc: SignedEdge | None
    children: tuple["TreeNode", ...]


@dataclass(frozen=True)
class VertexTree:
    """Depth-bounded unfolding of the shadowed graph from a root vertex.

    Each node labeled u has one child per shadowed out-arc of u; the same
    graph vertex may label many nodes.
    """

    graph_name: str
    root: TreeNode
    depth: int


def vertex_tree(
    graph: DirectedGraph,
    v: str,
    depth: int,
    *,
    max_nodes: int = DEFAULT_MAX_TREE_NODES,
) -> VertexTree:
    if depth < 0:
        raise ParameterError(f"tree depth must be >= 0, got {depth}")
    graph.require_vertex(v)
    shadowed = shadow(graph)
    count = 0

    def build(u: str, arc: SignedEdge | None, remaining: int) -> TreeNode:
        nonlocal count
        count += 1
        if count > max_nodes:
            raise LimitError(
                f"vertex tree from {v!r} exceeded {max_nodes} nodes at depth {depth}"
            )
        if remaining == 0:
            return TreeNode(u, arc, ())
        children = tuple(
            build(a.target, a, remaining - 1) for a in shadowed.arcs_from(u)
        )
        return TreeNode(u, arc, children)

    return VertexTree(graph.name, build(v, None, depth), depth)


def tree_regular_to_depth(tree: VertexTree, k: int) -> bool:
    """True iff every node strictly above the truncation depth has exactly
    k children, i.e. the tree agrees with the k-regular tree to its depth."""

    def check(node: TreeNode, level: int) -> bool:
        if level >= tree.depth:
            return True
        if len(node.children) != k:
            return False
        return all(check(c, level + 1) for c in node.children)

    return check(tree.root, 0)


def _canonical_shape(node: TreeNode) -> tuple:
    # AHU signature: vertex and arc labels deliberately ignored.
    return tuple(sorted(_canonical_shape(c) for c in node.children))


def tree_isomorphic(t1: VertexTree, t2: VertexTree) -> bool:
    """Unlabeled rooted-tree isomorphism to the common truncation depth."""
    if t1.depth != t2.depth:
        raise ParameterError(
            f"tree depths differ: {t1.depth} vs {t2.depth}"
        )
    return _canonical_shape(t1.root) == _canonical_shape(t2.root)


@dataclass
class ClassificationResult:
    """Spectral-class partition of a graph corpus.

    `classes` maps each fractal pair to the accepted graph names in input
    order; `rejected` lists (name, reason) for graphs that are disconnected
    or fail the degree characterization.
    """

    classes: dict[FractalPair, list[str]] = field(default_factory=dict)
    rejected: list[tuple[str, str]] = field(default_factory=list)


def classify(graphs: Sequence[DirectedGraph]) -> ClassificationResult:
    """Bucket graphs by fractal pair; per-graph failures become rejects."""
    result = ClassificationResult()
    for graph in graphs:
        try:
            pair = fractal_pair(graph)
        except (DisconnectedGraphError, NotFractalError) as exc:
            result.rejected.append((graph.name, str(exc)))
            continue
        result.classes.setdefault(pair, []).append(graph.name)
    result.classes = dict(sorted(result.classes.items()))
    return result


def classification_report(result: ClassificationResult) -> dict:
    return {
        "classes": [
            {"pair": [pair.n_zero, pair.n_sup], "graphs": list(names)}
            for pair, names in result.classes.items()
        ],
        "rejected": [
            {"graph": name, "reason": reason} for name, reason in result.rejected
        ],
    }
