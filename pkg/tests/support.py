"""Shared helpers for the test modules."""
from importlib.resources import files

from planpres.sweep import parse_presentation

FIXTURES = files("planpres") / "fixtures"
PP_FIXTURES = ("ball", "donut_flat", "donut_vertical", "two_balls")


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load(name: str):
    return parse_presentation((FIXTURES / f"{name}.pp").read_text(), name)


def bfs(g, source):
    adj = {}
    for i, j in g.edges:
        adj.setdefault(("a", i), []).append(("b", j))
        adj.setdefault(("b", j), []).append(("a", i))
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj.get(x, []):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def embedding_problems(g, emb) -> list[str]:
    """Check a layered embedding of a connected graph from scratch: vertex
    order by distance from the designated edge, e fixed on x = 0, every other
    edge y-monotone in its own stage, stages stacked in order."""
    from fractions import Fraction

    problems = []
    a0, b0 = g.edges[g.designated]
    dist = bfs(g, ("a", a0))
    if emb.a_order[0] != a0 or emb.b_order[0] != b0:
        problems.append("designated endpoints are not leftmost")
    for side, order in (("a", emb.a_order), ("b", emb.b_order)):
        ds = [dist[(side, s)] for s in order[1:]]
        if ds != sorted(ds):
            problems.append(f"{side}-vertices are not ordered by distance")
    first = emb.edges[0]
    if first.edge != g.designated or first.height != 0 or any(p[0] != 0 for p in first.polyline):
        problems.append("designated edge is not fixed on x = 0")
    if sorted(r.edge for r in emb.edges) != list(range(len(g.edges))):
        problems.append("edges are not embedded exactly once")
    heights = [r.height for r in emb.edges]
    if len(set(heights)) != len(heights):
        problems.append("two edges share a height")
    for r in emb.edges:
        if (emb.a_order[r.a], emb.b_order[r.b]) != g.edges[r.edge]:
            problems.append(f"edge {r.edge} joins the wrong vertices")
        ys = [p[1] for p in r.polyline]
        if any(y0 >= y1 for y0, y1 in zip(ys, ys[1:])):
            problems.append(f"edge {r.edge} is not y-monotone")
        if r.polyline[0] != emb.a_coord(r.a) or r.polyline[-1] != emb.b_coord(r.b):
            problems.append(f"edge {r.edge} does not end at its vertices")
        if r is first:
            continue
        k = max(dist[("a", g.edges[r.edge][0])], dist[("b", g.edges[r.edge][1])])
        if r.stage != k:
            problems.append(f"edge {r.edge} in stage {r.stage}, expected {k}")
        if not Fraction(k - 1, emb.ell) < r.height <= Fraction(k, emb.ell):
            problems.append(f"edge {r.edge} outside its layer")
        if any(p[2] != r.height for p in r.polyline[1:-1]):
            problems.append(f"edge {r.edge} is not level between its shoulders")
    return problems


def random_graph(rng):
    """A random monotone leveled graph of random size, so that Y-free,
    split and knotted-looking graphs all turn up."""
    from planpres.leveled import random_leveled_graph

    return random_leveled_graph(rng, rng.randint(1, 6), rng.randint(0, 4), rng.randint(0, 8))
