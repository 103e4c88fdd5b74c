"""Exact isomorphism testing for small directed multigraphs.

Backtracking over degree-compatible vertex assignments with parallel-edge
multiplicity matching. Intended for desk-scale graphs; the vertex bound and
the search-node budget make failure explicit instead of silently degrading.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import LimitError
from .graphs import DirectedGraph

DEFAULT_MAX_VERTICES = 12
DEFAULT_MAX_SEARCH_NODES = 500_000


@dataclass
class GraphMatch:
    """A witness isomorphism: vertex and edge bijections preserving sources
    and targets."""

    vertex_map: dict[str, str]
    edge_map: dict[str, str]


def _profile(graph: DirectedGraph, v: str) -> tuple[int, int, int]:
    out, inc, _ = graph.degrees(v)
    loops = sum(1 for e in graph.out_edges(v) if e.is_loop)
    return (out, inc, loops)


def graph_isomorphic(
    g1: DirectedGraph,
    g2: DirectedGraph,
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_search_nodes: int = DEFAULT_MAX_SEARCH_NODES,
) -> GraphMatch | None:
    """Return a witness bijection between `g1` and `g2`, or None.

    Raises LimitError when either graph exceeds `max_vertices` or the
    backtracking search visits more than `max_search_nodes` nodes.
    """
    if len(g1.vertices) > max_vertices or len(g2.vertices) > max_vertices:
        raise LimitError(
            f"isomorphism search limited to {max_vertices} vertices; "
            f"got {len(g1.vertices)} and {len(g2.vertices)}"
        )
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    profiles1 = {v: _profile(g1, v) for v in g1.vertices}
    profiles2 = {v: _profile(g2, v) for v in g2.vertices}
    if Counter(profiles1.values()) != Counter(profiles2.values()):
        return None

    mult1 = g1.edge_multiplicities()
    mult2 = g2.edge_multiplicities()
    if Counter(mult1.values()) != Counter(mult2.values()):
        return None

    candidates = {
        u: [v for v in g2.vertices if profiles2[v] == profiles1[u]]
        for u in g1.vertices
    }
    order = sorted(g1.vertices, key=lambda u: len(candidates[u]))
    mapping: dict[str, str] = {}
    used: set[str] = set()
    nodes_visited = 0

    def backtrack(idx: int) -> bool:
        nonlocal nodes_visited
        nodes_visited += 1
        if nodes_visited > max_search_nodes:
            raise LimitError(
                f"isomorphism search exceeded {max_search_nodes} nodes"
            )
        if idx == len(order):
            return True
        u = order[idx]
        for v in candidates[u]:
            if v in used:
                continue
            if mult1[(u, u)] != mult2[(v, v)]:
                continue
            ok = True
            for w, mw in mapping.items():
                if mult1[(u, w)] != mult2[(v, mw)] or mult1[(w, u)] != mult2[(mw, v)]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used.add(v)
            if backtrack(idx + 1):
                return True
            del mapping[u]
            used.remove(v)
        return False

    if not backtrack(0):
        return None

    # Parallel edges between a mapped pair are interchangeable; pair them up
    # in declaration order.
    groups2: dict[tuple[str, str], list[str]] = {}
    for e in g2.edges:
        groups2.setdefault((e.src, e.dst), []).append(e.id)
    edge_map: dict[str, str] = {}
    cursor: Counter = Counter()
    for e in g1.edges:
        key = (mapping[e.src], mapping[e.dst])
        edge_map[e.id] = groups2[key][cursor[key]]
        cursor[key] += 1
    return GraphMatch(vertex_map=dict(mapping), edge_map=edge_map)
