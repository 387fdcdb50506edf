import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planpres.bipartite import (
    BipartiteError,
    CollapseParallel,
    SlideOver,
    SlideSchedule,
    TranslateLayer,
    connected_bipartite_graphs,
    embed_bipartite,
    embed_components,
    flatten,
    parse_bg,
    random_bipartite_graph,
    replay,
    to_svg,
)

from support import FIXTURES, embedding_problems


def k33():
    return parse_bg((FIXTURES / "k33.bg").read_text())


def test_k33_four_tiny_circles():
    g = k33()
    assert g.betti() == 4
    emb = embed_bipartite(g)
    assert embedding_problems(g, emb) == []
    s = flatten(emb)
    assert s.tiny_circles == 4
    r = replay(emb, s)
    assert r.passed and r.tiny_circles == 4 == r.expected_tiny


def test_single_edge():
    g = parse_bg("A=1 B=1\nedge 0 0\n")
    s = flatten(embed_bipartite(g))
    assert s.count(SlideOver) == 0 and s.tiny_circles == 0
    assert replay(embed_bipartite(g), s).passed


@pytest.mark.parametrize(
    "text, line",
    [
        ("edge 0 0\n", 1),
        ("A=1 B=1\nedge 0\n", 2),
        ("A=1 B=1\nedge x 0\n", 2),
        ("A=1 B=1\nloop 0 0\n", 2),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(BipartiteError) as err:
        parse_bg(text)
    assert err.value.line == line


def test_designated_edge_must_be_listed():
    with pytest.raises(BipartiteError, match="missing designated edge"):
        parse_bg("A=2 B=1\nedge 0 0\ne 1 0\n")


def test_named_designated_edge():
    g = parse_bg("A=2 B=1\nedge 0 0\nedge 1 0\ne 1 0\n")
    emb = embed_bipartite(g)
    assert emb.designated == 1
    assert embedding_problems(g, emb) == []


def test_disconnected_needs_components():
    g = parse_bg("A=2 B=2\nedge 0 0\nedge 1 1\n")
    with pytest.raises(BipartiteError):
        embed_bipartite(g)
    embs = embed_components(g)
    assert len(embs) == 2
    assert all(replay(e, flatten(e)).passed for e in embs)


def test_replay_rejects_a_missing_first_move():
    emb = embed_bipartite(k33())
    s = flatten(emb)
    broken = replace(s, moves=s.moves[1:])
    assert not replay(emb, broken).passed


def test_replay_rejects_moving_e():
    emb = embed_bipartite(k33())
    s = flatten(emb)
    bad = SlideSchedule((SlideOver(emb.designated, emb.edges[1].edge, "a0"),) + s.moves, s.tiny_circles)
    r = replay(emb, bad)
    assert not r.passed and r.applied == 0


def test_replay_rejects_a_wrong_tiny_count():
    emb = embed_bipartite(k33())
    s = flatten(emb)
    assert not replay(emb, replace(s, tiny_circles=3)).passed


def test_schedule_round_trip():
    s = flatten(embed_bipartite(k33()))
    again = SlideSchedule.from_dict(s.as_dict())
    assert again.moves == s.moves and again.tiny_circles == s.tiny_circles
    kinds = {type(m) for m in s.moves}
    assert kinds == {SlideOver, CollapseParallel, TranslateLayer}


def test_svg_output():
    svg = to_svg(embed_components(k33()))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_small_exhaustive_counts():
    # 3 edges: P4, K1,3; 4 edges: three trees and C4; 5 edges: six trees and C4 plus a pendant edge
    counts = {}
    for g in connected_bipartite_graphs(5):
        counts[len(g.edges)] = counts.get(len(g.edges), 0) + 1
    assert counts == {1: 1, 2: 1, 3: 2, 4: 4, 5: 7}


def test_exhaustive_small_graphs_flatten():
    for g in connected_bipartite_graphs(7):
        emb = embed_bipartite(g)
        assert embedding_problems(g, emb) == []
        r = replay(emb, flatten(emb))
        assert r.passed and r.tiny_circles == len(g.edges) - g.vertex_count + 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_random_graphs_flatten(seed):
    g = random_bipartite_graph(random.Random(seed), 2, 25)
    emb = embed_bipartite(g)
    assert embedding_problems(g, emb) == []
    r = replay(emb, flatten(emb))
    assert r.passed
    assert r.tiny_circles == g.betti()
