import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planpres.surfaces import GluingGraph, SurfaceIndex, needs_braid
from planpres.sweep import random_presentation, simulate

from support import load


def whole(trace):
    return {(f, g) for g in range(1, len(trace)) for f in trace.states[g].in_faces}


@pytest.mark.parametrize(
    "name, genera",
    [("ball", [0]), ("donut_flat", [1]), ("donut_vertical", [1]), ("two_balls", [0])],
)
def test_boundary_genus(name, genera):
    trace = simulate(load(name))
    comps, _ = SurfaceIndex(trace).components(whole(trace))
    assert [c.genus for c in comps] == genera
    assert all(c.boundary == 0 for c in comps)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_euler_count_of_whole_boundary(seed):
    trace = simulate(random_presentation(random.Random(seed), 30))
    comps, _ = SurfaceIndex(trace).components(whole(trace))
    extrema = sum(not c.is_saddle for c in trace.classes)
    saddles = len(trace) - extrema
    assert sum(2 - 2 * c.genus for c in comps) == extrema - saddles


def gg(edges, a, b):
    return GluingGraph(tuple(f"a{i}" for i in range(a)), tuple(f"b{j}" for j in range(b)), tuple(edges), tuple(range(len(edges))))


@pytest.mark.parametrize(
    "edges, a, b, needed",
    [
        ([(0, 0)], 1, 1, False),
        ([(0, 0), (0, 1)], 1, 2, False),
        ([(0, 0), (1, 0), (1, 1)], 2, 2, False),
        ([(0, 0), (0, 1), (1, 0), (1, 1)], 2, 2, True),
        ([(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)], 3, 2, True),
    ],
)
def test_braid_skip_rule(edges, a, b, needed):
    assert needs_braid(gg(edges, a, b)) == needed


def test_gluing_graph_round_trip():
    g = gg([(0, 0), (0, 1)], 1, 2)
    assert GluingGraph.from_dict(g.as_dict()).same_as(g)
    assert g.as_bipartite().betti() == 0
