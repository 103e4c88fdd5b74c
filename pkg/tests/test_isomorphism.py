import random

import pytest

from fractaloid import (
    DirectedGraph,
    EdgeRecord,
    LimitError,
    family,
    graph_isomorphic,
    iterated_glue_loops,
    regularize,
    shadow,
)


def _apply_witness(g1, g2, match):
    # A valid witness maps every edge to an edge with mapped endpoints.
    assert sorted(match.vertex_map) == sorted(g1.vertices)
    assert sorted(match.vertex_map.values()) == sorted(g2.vertices)
    assert sorted(match.edge_map) == sorted(e.id for e in g1.edges)
    assert sorted(match.edge_map.values()) == sorted(e.id for e in g2.edges)
    targets = {e.id: e for e in g2.edges}
    for e in g1.edges:
        image = targets[match.edge_map[e.id]]
        assert image.src == match.vertex_map[e.src]
        assert image.dst == match.vertex_map[e.dst]


def test_identity_witness():
    g = family("complete", 3)
    match = graph_isomorphic(g, g)
    assert match is not None
    _apply_witness(g, g, match)


def test_doubled_cycle_vs_complete_not_isomorphic():
    # Same degree sequence and size, different parallel-edge structure.
    r2k3 = regularize(family("circulant", 3), 2)
    c3 = family("complete", 3)
    assert graph_isomorphic(r2k3, c3) is None


def test_shadowed_graphs_of_same_class_not_isomorphic():
    # One has loops after shadowing, the other does not.
    g1 = shadow(regularize(family("circulant", 3), 2)).as_graph()
    g2 = shadow(iterated_glue_loops(family("circulant", 3), 1)).as_graph()
    assert graph_isomorphic(g1, g2) is None


def test_relabeled_graph_found():
    g1 = family("complete", 4)
    renames = {f"v{i}": f"w{5 - i}" for i in range(1, 5)}
    g2 = DirectedGraph(
        "relabeled",
        tuple(renames[v] for v in g1.vertices),
        tuple(
            EdgeRecord(f"x{i}", renames[e.src], renames[e.dst])
            for i, e in enumerate(g1.edges)
        ),
    )
    match = graph_isomorphic(g1, g2)
    assert match is not None
    _apply_witness(g1, g2, match)


def test_loop_count_discriminates():
    g1 = family("loops", 2)
    g2 = DirectedGraph(
        "pseudo",
        ("a",),
        (EdgeRecord("e1", "a", "a"), EdgeRecord("e2", "a", "a")),
    )
    assert graph_isomorphic(g1, g2) is not None
    g3 = iterated_glue_loops(family("circulant", 2), 1)
    assert graph_isomorphic(g1, g3) is None


def test_random_permutations_reflexive_and_symmetric():
    rng = random.Random(7)
    for trial in range(25):
        n_vertices = rng.randint(1, 5)
        vertices = tuple(f"v{i}" for i in range(n_vertices))
        edges = tuple(
            EdgeRecord(
                f"e{j}", rng.choice(vertices), rng.choice(vertices)
            )
            for j in range(rng.randint(0, 7))
        )
        g = DirectedGraph(f"rand{trial}", vertices, edges)
        assert graph_isomorphic(g, g) is not None

        perm = list(vertices)
        rng.shuffle(perm)
        rename = dict(zip(vertices, perm))
        shuffled_edges = list(edges)
        rng.shuffle(shuffled_edges)
        h = DirectedGraph(
            "perm",
            tuple(sorted(perm)),
            tuple(
                EdgeRecord(f"f{j}", rename[e.src], rename[e.dst])
                for j, e in enumerate(shuffled_edges)
            ),
        )
        forward = graph_isomorphic(g, h)
        backward = graph_isomorphic(h, g)
        assert forward is not None and backward is not None
        _apply_witness(g, h, forward)
        _apply_witness(h, g, backward)


def test_size_mismatch_fast_reject():
    assert graph_isomorphic(family("circulant", 3), family("circulant", 4)) is None
    assert graph_isomorphic(family("loops", 1), family("loops", 2)) is None


def test_vertex_limit():
    with pytest.raises(LimitError):
        graph_isomorphic(family("path", 13), family("path", 13))
    assert graph_isomorphic(
        family("path", 13), family("path", 13), max_vertices=13
    )


def test_search_node_limit():
    g = family("complete", 6)
    with pytest.raises(LimitError):
        graph_isomorphic(g, g, max_search_nodes=2)
