import random
from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from planpres.connectivity import build_connectivity_graph, cross_section_oracle, edge_census, fox_decision
from planpres.sweep import random_presentation, simulate

from support import load


def shape(graph):
    """Vertex count, edge count and sorted degree sequence."""
    deg = Counter()
    for e in graph.edges:
        deg[e.below] += 1
        deg[e.above] += 1
    return len(graph.vertices), len(graph.edges), sorted(deg[v.id] for v in graph.vertices)


def test_donut_flat_single_vertex():
    g = build_connectivity_graph(simulate(load("donut_flat")))
    assert shape(g) == (1, 0, [0])
    assert fox_decision(g).verdict == "yes"


def test_two_balls_is_a_path():
    g = build_connectivity_graph(simulate(load("two_balls")))
    assert shape(g) == (4, 3, [1, 1, 2, 2])
    assert len(g.components()) == 1
    assert fox_decision(g).verdict == "yes"


def test_donut_vertical_is_a_four_cycle():
    g = build_connectivity_graph(simulate(load("donut_vertical")))
    assert shape(g) == (4, 4, [2, 2, 2, 2])
    assert len(g.components()) == 1
    d = fox_decision(g)
    assert d.verdict == "no"
    w = d.witness
    assert len(g.components(skip=w["edge"])) == 1
    e = g.edges[w["edge"]]
    assert (e.below, e.above, e.cut, e.face) == (w["below"], w["above"], w["cut"], w["face"])


def test_oracle_on_fixtures(fixture_trace):
    assert cross_section_oracle(fixture_trace).passed


def test_edge_census_on_fixtures(fixture_trace):
    g = build_connectivity_graph(fixture_trace)
    for found, expected in edge_census(fixture_trace, g).values():
        assert found == expected


def test_dot_export():
    dot = build_connectivity_graph(simulate(load("two_balls"))).to_dot("two_balls")
    assert dot.startswith("graph two_balls {")
    assert dot.count(" -- ") == 3


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_random_oracle_and_tree_tests(seed):
    trace = simulate(random_presentation(random.Random(seed), 30))
    assert cross_section_oracle(trace).passed
    g = build_connectivity_graph(trace)
    for found, expected in edge_census(trace, g).values():
        assert found == expected
    d = fox_decision(g)
    for comp in d.components:
        assert comp["tree"] == (len(comp["edges"]) == len(comp["vertices"]) - 1)
        assert comp["tree"] == (not g.has_cycle_dfs(comp["vertices"]))
    if d.verdict == "no":
        assert not g.is_bridge(d.witness["edge"])


def test_cells_cover_every_in_face():
    trace = simulate(load("two_balls"))
    g = build_connectivity_graph(trace)
    for k in range(1, len(trace)):
        for f in trace.states[k].in_faces:
            assert (f, k) in g.cells
