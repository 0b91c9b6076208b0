import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliation_barcode.foliation import GeneratorParams, generate
from foliation_barcode.graph import (CLOSED, OPEN, SUB, SUPER, ActionGraph, GraphError,
                                     Subgraph, VertexKind, classify_vertex, components,
                                     d_value, genus, is_acyclic, is_degenerate, j_map,
                                     l_value, partition, sublevel, superlevel, validate)


def test_classify_section4(section4):
    assert classify_vertex(section4, "x") is VertexKind.SADDLE
    assert classify_vertex(section4, "z") is VertexKind.SOURCE
    assert classify_vertex(section4, "y1") is VertexKind.SINK


def test_classify_single_vertex():
    g = ActionGraph.build([("a", 0, 1)], [])
    assert classify_vertex(g, "a") is VertexKind.SINK
    assert is_degenerate(g)
    assert validate(g) == []


def test_classify_unknown(section4):
    with pytest.raises(GraphError):
        classify_vertex(section4, "nope")


def test_sublevel_sphere(sphere):
    sub = sublevel(sphere, -1.0, OPEN)
    assert sub.vertices == {"p1", "p2"} and sub.edges == ()
    assert sublevel(sphere, -10.0).vertices == frozenset()
    closed = sublevel(sphere, -1.0, CLOSED)
    assert closed.vertices == {"p1", "p2", "x1"}
    assert sorted(closed.edges) == [("x1", "p1"), ("x1", "p2")]
    assert len(components(closed)) == 1


def test_superlevel_sphere(sphere):
    sup = superlevel(sphere, 1.0, OPEN)
    assert sup.vertices == {"s1", "s2"} and sup.edges == ()
    assert len(components(sup)) == 2
    assert superlevel(sphere, 10.0).vertices == frozenset()
    closed = superlevel(sphere, 1.0, CLOSED)
    assert closed.vertices == {"x2", "s1", "s2"}
    assert len(components(closed)) == 1


def test_components_basic(section4):
    assert len(components(Subgraph(frozenset(), ()))) == 0
    part = partition(section4, 2.0, SUB, OPEN)
    assert part.blocks == {frozenset({"y1"}), frozenset({"y2"})}
    path = Subgraph(frozenset("abcd"), (("a", "b"), ("c", "b"), ("c", "d")))
    assert len(components(path)) == 1


def test_l_and_d_values(section4, sphere):
    assert l_value(section4, {"y1"}) == 1.0
    assert l_value(section4, section4.vertices) == 0.0
    assert d_value(sphere, sphere.vertices) == 2.5
    with pytest.raises(GraphError):
        l_value(section4, set())


def test_j_map_section4(section4):
    sub = j_map(section4, 2.0, SUB)
    (target,) = sub.targets
    assert sorted(map(sorted, sub.preimage(target))) == [["y1"], ["y2"]]
    assert sub.preimage_counts() == {target: 2}
    sup = j_map(section4, 2.0, SUPER)
    (target,) = sup.targets
    assert target == {"z", "x"}
    assert sup.preimage(target) == [frozenset({"z"})]
    assert j_map(section4, 0.0, SUB).mapping == {}
    with pytest.raises(GraphError):
        j_map(section4, 1.5, SUB)


def test_genus():
    sphere_like = ActionGraph.build(
        [(f"v{i}", i, ind) for i, ind in enumerate([1, 1, -1, -1, 1, 1])], [])
    assert genus(sphere_like) == 0
    torus_like = ActionGraph.build(
        [(f"v{i}", i, ind) for i, ind in enumerate([1, 1, -1, -1, 1, 1, -1, -1])], [])
    assert genus(torus_like) == 1
    with pytest.raises(GraphError):
        genus(ActionGraph.build([("a", 0, 1), ("b", 1, 1), ("c", 2, 1)], []))


def test_validate_messages(section4):
    assert validate(section4) == []
    bad = ActionGraph.build([("a", 0, 1), ("b", 1, 1)], [("a", "b")])
    (msg,) = validate(bad)
    assert "a->b" in msg
    apart = ActionGraph.build([("a", 0, 1), ("b", 1, 1)], [])
    assert validate(apart) == ["graph is not connected"]
    ghost = ActionGraph.build([("a", 0, 1)], [("a", "q")])
    assert "unknown vertex q" in validate(ghost)[0]


def test_validate_strict_profile():
    g = ActionGraph.build([("y", 0, 1), ("x", 1, 2), ("z", 2, 1)], [("x", "y"), ("z", "x")])
    assert validate(g) == []
    assert validate(g, strict=True) == ["saddle x has positive index 2"]


def test_json_round_trip(sphere):
    again = ActionGraph.from_json(sphere.to_json())
    assert again.vertices == sphere.vertices
    assert sorted(again.edges) == sorted(sphere.edges)


def test_json_rejects_bad_ids():
    with pytest.raises(GraphError):
        ActionGraph.from_dict({"vertices": [{"id": "", "action": 0, "index": 1}], "edges": []})
    with pytest.raises(GraphError):
        ActionGraph.from_dict({"vertices": [{"id": "a", "action": 0, "index": 1},
                                            {"id": "a", "action": 1, "index": 1}],
                               "edges": []})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(0, 10**6))
def test_threshold_invariants(g_target, seed):
    g = generate(GeneratorParams(g_target, rng_seed=seed)).graph
    assert is_acyclic(g)
    values = g.action_values()
    for side in (SUB, SUPER):
        for t in values:
            small = partition(g, t, side, OPEN)
            big = partition(g, t, side, CLOSED)
            for block in small.blocks:
                assert sum(block <= b for b in big.blocks) == 1
    for s, t in zip(values, values[1:]):
        lower, upper = partition(g, s, SUB, CLOSED), partition(g, t, SUB, CLOSED)
        for block in lower.blocks:
            assert sum(block <= b for b in upper.blocks) == 1


def test_genus_ignores_extra_edges():
    rng = random.Random(0)
    g = generate(GeneratorParams(2, rng_seed=5)).graph
    verts = sorted(g.vertices, key=g.action)
    extra = []
    for _ in range(5):
        i, j = sorted(rng.sample(range(len(verts)), 2))
        extra.append((verts[j], verts[i]))
    assert genus(g.with_edges(g.edges + tuple(extra))) == genus(g) == 2
