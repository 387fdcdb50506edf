"""Layered embedding of a bipartite graph in the cube and the slide schedule
that flattens it.

A-vertices sit on the line y = -1, B-vertices on y = +1, both in the plane
z = 0, ordered by graph distance from a0.  An edge whose farther endpoint is
at distance k lies in its own horizontal plane near z = k/l.  Sliding edges
over one another, stage by stage, lays the whole graph into z = 0 as the
designated edge e plus two paths along y = +-1, with every extra edge turned
into a tiny circle.
"""
from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

__all__ = [
    "BipartiteError",
    "BipartiteGraph",
    "BipartiteEmbedding",
    "EdgeRecord",
    "SlideOver",
    "CollapseParallel",
    "TranslateLayer",
    "SlideSchedule",
    "ReplayReport",
    "parse_bg",
    "embed_bipartite",
    "embed_components",
    "flatten",
    "replay",
    "to_svg",
    "connected_bipartite_graphs",
    "random_bipartite_graph",
]


class BipartiteError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class BipartiteGraph:
    a_count: int
    b_count: int
    edges: tuple  # (a index, b index); repeats are parallel edges
    designated: int = 0  # index into edges

    def __post_init__(self):
        if self.a_count < 1 or self.b_count < 1:
            raise BipartiteError("both vertex sets must be non-empty")
        if not 0 <= self.designated < len(self.edges):
            raise BipartiteError("missing designated edge")
        for i, j in self.edges:
            if not (0 <= i < self.a_count and 0 <= j < self.b_count):
                raise BipartiteError(f"edge ({i}, {j}) out of range")

    @property
    def vertex_count(self) -> int:
        return self.a_count + self.b_count

    def adjacency(self) -> dict[tuple[str, int], list[tuple[str, int]]]:
        adj = {("a", i): [] for i in range(self.a_count)}
        adj.update({("b", j): [] for j in range(self.b_count)})
        for i, j in self.edges:
            adj[("a", i)].append(("b", j))
            adj[("b", j)].append(("a", i))
        return adj

    def distances(self, source=("a", 0)) -> dict:
        adj = self.adjacency()
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def components(self) -> list[set]:
        adj = self.adjacency()
        seen, comps = set(), []
        for v in adj:
            if v in seen:
                continue
            comp = set(self.distances(v))
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.distances(("a", self.edges[self.designated][0]))) == self.vertex_count

    def betti(self) -> int:
        return len(self.edges) - self.vertex_count + len(self.components())

    def to_text(self) -> str:
        lines = [f"A={self.a_count} B={self.b_count}"]
        lines += [f"edge {i} {j}" for i, j in self.edges]
        if self.designated:
            i, j = self.edges[self.designated]
            lines.append(f"e {i} {j}")
        return "\n".join(lines) + "\n"


def parse_bg(text: str) -> BipartiteGraph:
    """Read the ``.bg`` format; the first edge is designated unless an
    ``e i j`` line names another listed edge.

    >>> parse_bg("A=1 B=2\\nedge 0 0\\nedge 0 1").betti()
    0
    """
    header = None
    edges = []
    designated = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            try:
                sizes = dict(p.split("=", 1) for p in parts)
                header = (int(sizes["A"]), int(sizes["B"]))
            except (ValueError, KeyError):
                raise BipartiteError("first line must be 'A=<n> B=<m>'", lineno) from None
            continue
        if parts[0] not in ("edge", "e") or len(parts) != 3:
            raise BipartiteError("expected 'edge i j' or 'e i j'", lineno)
        try:
            pair = (int(parts[1]), int(parts[2]))
        except ValueError:
            raise BipartiteError("edge endpoints must be integers", lineno) from None
        if parts[0] == "edge":
            edges.append(pair)
        else:
            if designated is not None:
                raise BipartiteError("more than one designated edge", lineno)
            designated = pair
    if header is None:
        raise BipartiteError("empty graph file")
    index = 0
    if designated is not None:
        if designated not in edges:
            raise BipartiteError(f"missing designated edge: {designated} is not listed")
        index = edges.index(designated)
    elif not edges:
        raise BipartiteError("missing designated edge: the graph has no edges")
    return BipartiteGraph(header[0], header[1], tuple(edges), index)


# -- the layered embedding ----------------------------------------------------


@dataclass(frozen=True)
class EdgeRecord:
    edge: int  # index in the source graph
    a: int  # embedded index
    b: int
    stage: int
    height: Fraction
    polyline: tuple

    @property
    def designated(self) -> bool:
        return self.height == 0


@dataclass(frozen=True)
class BipartiteEmbedding:
    a_count: int
    b_count: int
    a_order: tuple  # embedded index -> source index
    b_order: tuple
    edges: tuple  # EdgeRecord, designated edge first
    ell: int
    designated: int  # source edge index of e
    a_distance: tuple  # by embedded index
    b_distance: tuple

    def a_coord(self, i: int) -> tuple:
        return (Fraction(i, self.a_count), Fraction(-1), Fraction(0))

    def b_coord(self, j: int) -> tuple:
        return (Fraction(j, self.b_count), Fraction(1), Fraction(0))

    def stage_counts(self) -> dict[int, int]:
        counts: dict[int, int] = defaultdict(int)
        for r in self.edges:
            counts[r.stage] += 1
        return dict(sorted(counts.items()))

    def as_dict(self) -> dict:
        def pt(p):
            return [str(c) for c in p]

        return {
            "ell": self.ell,
            "designated": self.designated,
            "a": [{"index": i, "source": s, "coord": pt(self.a_coord(i))} for i, s in enumerate(self.a_order)],
            "b": [{"index": j, "source": s, "coord": pt(self.b_coord(j))} for j, s in enumerate(self.b_order)],
            "edges": [
                {
                    "edge": r.edge,
                    "a": r.a,
                    "b": r.b,
                    "stage": r.stage,
                    "height": str(r.height),
                    "polyline": [pt(p) for p in r.polyline],
                }
                for r in self.edges
            ],
            "stage_counts": {str(k): v for k, v in self.stage_counts().items()},
        }


_SHOULDER = Fraction(7, 8)


def embed_bipartite(g: BipartiteGraph, source_edges: tuple | None = None) -> BipartiteEmbedding:
    """Embed a connected bipartite graph with its designated edge on x = 0."""
    if not g.is_connected():
        raise BipartiteError("graph is not connected; use embed_components")
    source_edges = source_edges or tuple(range(len(g.edges)))
    a0, b0 = g.edges[g.designated]
    dist = g.distances(("a", a0))
    a_order = sorted(range(g.a_count), key=lambda i: (i != a0, dist[("a", i)], i))
    b_order = sorted(range(g.b_count), key=lambda j: (j != b0, dist[("b", j)], j))
    a_new = {s: i for i, s in enumerate(a_order)}
    b_new = {s: j for j, s in enumerate(b_order)}
    ell = max(dist.values())

    stages: dict[int, list] = defaultdict(list)
    for idx, (i, j) in enumerate(g.edges):
        if idx == g.designated:
            continue
        k = max(dist[("a", i)], dist[("b", j)])
        far, near = (b_new[j], a_new[i]) if k % 2 else (a_new[i], b_new[j])
        stages[k].append((far, near, idx))
    e_record = EdgeRecord(
        source_edges[g.designated],
        0,
        0,
        1,
        Fraction(0),
        ((Fraction(0), Fraction(-1), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))),
    )
    records = [e_record]
    for k in sorted(stages):
        group = sorted(stages[k])
        p = len(group)
        delta = Fraction(1, 2 * ell * (p + 1))
        for jdx, (far, near, idx) in enumerate(group):
            z = Fraction(k, ell) - jdx * delta
            ai, bj = (near, far) if k % 2 else (far, near)
            xa, xb = Fraction(ai, g.a_count), Fraction(bj, g.b_count)
            poly = (
                (xa, Fraction(-1), Fraction(0)),
                (xa, -_SHOULDER, z),
                (xb, _SHOULDER, z),
                (xb, Fraction(1), Fraction(0)),
            )
            records.append(EdgeRecord(source_edges[idx], ai, bj, k, z, poly))
    return BipartiteEmbedding(
        g.a_count,
        g.b_count,
        tuple(a_order),
        tuple(b_order),
        tuple(records),
        ell,
        source_edges[g.designated],
        tuple(dist[("a", s)] for s in a_order),
        tuple(dist[("b", s)] for s in b_order),
    )


def embed_components(g: BipartiteGraph) -> list[BipartiteEmbedding]:
    """One embedding per component that has edges.  The component holding
    the designated edge keeps it; every other component uses its first edge."""
    out = []
    for comp in sorted(g.components(), key=lambda c: min(c, key=lambda v: (v[0], v[1]))):
        idxs = [k for k, (i, j) in enumerate(g.edges) if ("a", i) in comp]
        if not idxs:
            continue
        a_ids = sorted(i for s, i in comp if s == "a")
        b_ids = sorted(j for s, j in comp if s == "b")
        a_map = {s: n for n, s in enumerate(a_ids)}
        b_map = {s: n for n, s in enumerate(b_ids)}
        sub_edges = tuple((a_map[g.edges[k][0]], b_map[g.edges[k][1]]) for k in idxs)
        designated = idxs.index(g.designated) if g.designated in idxs else 0
        sub = BipartiteGraph(len(a_ids), len(b_ids), sub_edges, designated)
        emb = embed_bipartite(sub, tuple(idxs))
        # report vertices by their index in the full graph
        out.append(
            BipartiteEmbedding(
                emb.a_count,
                emb.b_count,
                tuple(a_ids[s] for s in emb.a_order),
                tuple(b_ids[s] for s in emb.b_order),
                emb.edges,
                emb.ell,
                emb.designated,
                emb.a_distance,
                emb.b_distance,
            )
        )
    return out


# -- schedules ----------------------------------------------------------------


@dataclass(frozen=True)
class SlideOver:
    moving: int
    anchor: int
    shared: str  # vertex label, e.g. "a0"

    def as_dict(self) -> dict:
        return {"move": "SlideOver", "moving": self.moving, "anchor": self.anchor, "shared": self.shared}


@dataclass(frozen=True)
class CollapseParallel:
    edge: int
    onto: int
    circle: int

    def as_dict(self) -> dict:
        return {"move": "CollapseParallel", "edge": self.edge, "onto": self.onto, "circle": self.circle}


@dataclass(frozen=True)
class TranslateLayer:
    stage: int
    height: Fraction

    def as_dict(self) -> dict:
        return {"move": "TranslateLayer", "stage": self.stage, "height": str(self.height)}


def move_from_dict(d: dict):
    kind = d.get("move")
    if kind == "SlideOver":
        return SlideOver(int(d["moving"]), int(d["anchor"]), str(d["shared"]))
    if kind == "CollapseParallel":
        return CollapseParallel(int(d["edge"]), int(d["onto"]), int(d["circle"]))
    if kind == "TranslateLayer":
        return TranslateLayer(int(d["stage"]), Fraction(d["height"]))
    raise BipartiteError(f"unknown move {kind!r}")


@dataclass(frozen=True)
class SlideSchedule:
    moves: tuple
    tiny_circles: int
    terminal: str = "all edges in the plane z = 0: e, paths along y = -1 and y = +1, tiny circles"

    def count(self, kind) -> int:
        return sum(isinstance(m, kind) for m in self.moves)

    def as_dict(self) -> dict:
        return {
            "moves": [m.as_dict() for m in self.moves],
            "tiny_circles": self.tiny_circles,
            "terminal": self.terminal,
            "counts": {
                "SlideOver": self.count(SlideOver),
                "CollapseParallel": self.count(CollapseParallel),
                "TranslateLayer": self.count(TranslateLayer),
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SlideSchedule":
        return cls(tuple(move_from_dict(m) for m in d["moves"]), int(d["tiny_circles"]))


def _label(v: tuple[str, int]) -> str:
    return f"{v[0]}{v[1]}"


def flatten(emb: BipartiteEmbedding) -> SlideSchedule:
    """Stage by stage, rightmost far vertex first: route the extra edges at a
    far vertex onto its primary edge and collapse them, then slide the
    primary edge along the flat part until it joins the far vertex to its
    left-hand neighbour."""
    ends: dict[int, list] = {r.edge: [("a", r.a), ("b", r.b)] for r in emb.edges}
    e = emb.designated
    flat = [e]
    moves: list = []
    circle = 0

    def path(src, dst, usable):
        adj = defaultdict(list)
        for idx in usable:
            u, v = ends[idx]
            adj[u].append((idx, v))
            adj[v].append((idx, u))
        prev = {src: None}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for idx, y in adj[x]:
                if y not in prev:
                    prev[y] = (idx, x)
                    queue.append(y)
        steps = []
        x = dst
        while prev[x] is not None:
            idx, w = prev[x]
            steps.append((idx, w, x))
            x = w
        return steps[::-1]

    def route(idx, src, dst, usable):
        for anchor, at, to in path(src, dst, usable):
            moves.append(SlideOver(idx, anchor, _label(at)))
            ends[idx][ends[idx].index(at)] = to

    by_stage: dict[int, dict[int, list]] = defaultdict(lambda: defaultdict(list))
    for r in emb.edges[1:]:
        far = r.b if r.stage % 2 else r.a
        by_stage[r.stage][far].append(r)
    for k in range(1, emb.ell + 1):
        if k > 1:
            moves.append(TranslateLayer(k - 1, Fraction(2 * k - 1, 2 * emb.ell)))
        side = "b" if k % 2 else "a"
        dists = emb.b_distance if side == "b" else emb.a_distance
        far_vertices = [f for f, d in enumerate(dists) if d == k]
        primary = {}
        for f in far_vertices:
            recs = sorted(by_stage[k][f], key=lambda r: (r.a if side == "b" else r.b, r.edge))
            if k == 1 and f == 0:
                primary[f] = e
                extras = recs
            else:
                primary[f] = recs[0].edge
                extras = recs[1:]
            primary_near = next(v for v in ends[primary[f]] if v != (side, f))
            for r in extras:
                near = next(v for v in ends[r.edge] if v != (side, f))
                route(r.edge, near, primary_near, flat)
                circle += 1
                moves.append(CollapseParallel(r.edge, primary[f], circle))
        for f in reversed(far_vertices):
            idx = primary[f]
            if idx == e:
                continue
            near = next(v for v in ends[idx] if v != (side, f))
            usable = flat + ([primary[f - 1]] if f - 1 in primary else [])
            route(idx, near, (side, f - 1), usable)
            flat.append(idx)
    moves.append(TranslateLayer(emb.ell, Fraction(0)))
    return SlideSchedule(tuple(moves), circle)


# -- independent replay -------------------------------------------------------


@dataclass(frozen=True)
class ReplayReport:
    passed: bool
    applied: int
    failure: dict | None
    tiny_circles: int
    expected_tiny: int

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "applied": self.applied,
            "failure": self.failure,
            "tiny_circles": self.tiny_circles,
            "expected_tiny_circles": self.expected_tiny,
        }


def _parse_label(s: str) -> tuple[str, int] | None:
    if len(s) >= 2 and s[0] in "ab" and s[1:].isdigit():
        return (s[0], int(s[1:]))
    return None


def replay(emb: BipartiteEmbedding, s: SlideSchedule) -> ReplayReport:
    """Apply ``s`` to an explicit configuration built from ``emb`` alone,
    checking every move, the component count and first Betti number after
    every prefix, and the flat terminal state."""
    ends = {r.edge: (("a", r.a), ("b", r.b)) for r in emb.edges}
    stage = {r.edge: r.stage for r in emb.edges}
    z = {r.edge: r.height for r in emb.edges}
    tiny: set[int] = set()
    circles: set[int] = set()
    e = emb.designated
    # components are counted over the vertices this embedding touches
    touched = {v for pair in ends.values() for v in pair}

    def invariants():
        parent = {v: v for v in touched}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        active = [i for i in ends if i not in tiny]
        for i in active:
            u, v = ends[i]
            parent[find(u)] = find(v)
        comps = len({find(v) for v in touched})
        return comps, len(active) + len(tiny) - len(touched) + comps

    def is_flat(i):
        if i == e:
            return ends[i] == (("a", 0), ("b", 0))
        (s1, x1), (s2, x2) = ends[i]
        return s1 == s2 and abs(x1 - x2) == 1

    start = invariants()
    expected_tiny = start[1]

    def fail(k, move, reason):
        return ReplayReport(False, k, {"index": k, "move": move.as_dict(), "reason": reason}, len(tiny), expected_tiny)

    for k, m in enumerate(s.moves):
        if isinstance(m, SlideOver):
            if m.moving == e:
                return fail(k, m, "designated edge is immovable")
            if m.moving not in ends or m.anchor not in ends:
                return fail(k, m, "unknown edge")
            if m.moving in tiny or m.anchor in tiny:
                return fail(k, m, "edge already collapsed to a tiny circle")
            if m.moving == m.anchor:
                return fail(k, m, "an edge cannot slide over itself")
            v = _parse_label(m.shared)
            if v is None or v not in ends[m.moving] or v not in ends[m.anchor]:
                return fail(k, m, f"edges do not share endpoint {m.shared}")
            other = ends[m.anchor][1] if ends[m.anchor][0] == v else ends[m.anchor][0]
            a, b = ends[m.moving]
            new = (other, b) if a == v else (a, other)
            if new[0] == new[1]:
                return fail(k, m, "slide would create a loop")
            ends[m.moving] = new
        elif isinstance(m, CollapseParallel):
            if m.edge == e:
                return fail(k, m, "designated edge is immovable")
            if m.edge not in ends or m.onto not in ends or m.edge == m.onto:
                return fail(k, m, "unknown or identical edges")
            if m.edge in tiny or m.onto in tiny:
                return fail(k, m, "edge already collapsed to a tiny circle")
            if sorted(ends[m.edge]) != sorted(ends[m.onto]):
                return fail(k, m, "edges are not parallel")
            if m.circle in circles:
                return fail(k, m, f"tiny circle {m.circle} already exists")
            tiny.add(m.edge)
            circles.add(m.circle)
        elif isinstance(m, TranslateLayer):
            pending = [i for i in ends if i not in tiny and stage[i] <= m.stage and not is_flat(i)]
            if pending:
                return fail(k, m, f"stage {m.stage} still has layered edges {sorted(pending)}")
            layered = [z[i] for i in ends if i not in tiny and not is_flat(i)]
            if m.height < 0 or (layered and m.height >= min(layered)):
                return fail(k, m, "translation would pass through a layered edge")
            for i in ends:
                if i != e and i not in tiny and is_flat(i):
                    z[i] = m.height
        else:
            return fail(k, m, "unknown move")
        if invariants() != start:
            return fail(k, m, "component count or first Betti number changed")

    report = ReplayReport(True, len(s.moves), None, len(tiny), expected_tiny)
    unflat = [i for i in ends if i not in tiny and (not is_flat(i) or z[i] != 0)]
    if unflat:
        return ReplayReport(False, len(s.moves), {"index": len(s.moves), "reason": f"edges {sorted(unflat)} not flat at z = 0"}, len(tiny), expected_tiny)
    if len(tiny) != expected_tiny:
        return ReplayReport(False, len(s.moves), {"index": len(s.moves), "reason": "tiny-circle count differs from |E| - |V| + 1"}, len(tiny), expected_tiny)
    if s.tiny_circles != len(tiny):
        return ReplayReport(False, len(s.moves), {"index": len(s.moves), "reason": f"schedule declares {s.tiny_circles} tiny circles, replay made {len(tiny)}"}, len(tiny), expected_tiny)
    return report


# -- rendering ----------------------------------------------------------------


def to_svg(embs: list[BipartiteEmbedding], size: int = 400) -> str:
    """Top view of the layered embedding: x across, y up the page, colour by
    stage."""
    palette = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]
    pad = 20
    span = size - 2 * pad
    rows = max(1, len(embs))
    height = rows * (size // 2) + 2 * pad
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" viewBox="0 0 {size} {height}">']
    for c, emb in enumerate(embs):
        top = pad + c * (size // 2)

        def xy(p, top=top):
            x = pad + float(p[0]) * span
            y = top + (1 - float(p[1])) / 2 * (size // 2 - 2 * pad) + float(p[2]) * 6
            return f"{x:.2f},{y:.2f}"

        for r in emb.edges:
            colour = "#000000" if r.height == 0 else palette[(r.stage - 1) % len(palette)]
            pts = " ".join(xy(p) for p in r.polyline)
            out.append(f'  <polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        for i in range(emb.a_count):
            x, y = xy(emb.a_coord(i)).split(",")
            out.append(f'  <circle cx="{x}" cy="{y}" r="3" fill="#000"/>')
        for j in range(emb.b_count):
            x, y = xy(emb.b_coord(j)).split(",")
            out.append(f'  <circle cx="{x}" cy="{y}" r="3" fill="#fff" stroke="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- graph families for tests -------------------------------------------------


def connected_bipartite_graphs(max_edges: int) -> Iterator[BipartiteGraph]:
    """Every connected simple bipartite graph with 1..max_edges edges, once
    per isomorphism class, by edge augmentation with canonical dedup."""
    import pynauty

    def certificate(n, edges):
        adj = {v: [] for v in range(n)}
        for u, v in edges:
            adj[u].append(v)
        return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))

    def as_bipartite(n, edges, colour):
        a_ids = [v for v in range(n) if colour[v] == 0]
        b_ids = [v for v in range(n) if colour[v] == 1]
        a_map = {v: i for i, v in enumerate(a_ids)}
        b_map = {v: j for j, v in enumerate(b_ids)}
        pairs = []
        for u, v in edges:
            if colour[u] == 1:
                u, v = v, u
            pairs.append((a_map[u], b_map[v]))
        return BipartiteGraph(len(a_ids), len(b_ids), tuple(pairs))

    level = [(2, ((0, 1),), (0, 1))]
    for m in range(1, max_edges + 1):
        for n, edges, colour in level:
            yield as_bipartite(n, edges, colour)
        if m == max_edges:
            return
        seen = {}
        for n, edges, colour in level:
            present = set(edges)
            cands = [(n + 1, edges + ((v, n),), colour + (1 - colour[v],)) for v in range(n)]
            cands += [
                (n, edges + ((u, v),), colour)
                for u in range(n)
                for v in range(u + 1, n)
                if colour[u] != colour[v] and (u, v) not in present
            ]
            for c in cands:
                key = certificate(c[0], c[1])
                if key not in seen:
                    seen[key] = c
        level = list(seen.values())


def random_bipartite_graph(rng: random.Random, min_edges: int = 13, max_edges: int = 40) -> BipartiteGraph:
    """A random connected bipartite multigraph."""
    m = rng.randint(min_edges, max_edges)
    na = rng.randint(1, max(1, m // 2))
    nb = rng.randint(1, max(1, m // 2))
    while na + nb - 1 > m:
        nb -= 1
    verts = [("a", i) for i in range(na)] + [("b", j) for j in range(nb)]
    placed = [("a", 0)]
    rest = verts[1:]
    rng.shuffle(rest)
    edges = []
    for v in rest:  # a random spanning tree, each new vertex joined to the other side
        options = [w for w in placed if w[0] != v[0]]
        if not options:
            rest.append(v)
            continue
        w = rng.choice(options)
        edges.append((v[1], w[1]) if v[0] == "a" else (w[1], v[1]))
        placed.append(v)
    while len(edges) < m:
        edges.append((rng.randrange(na), rng.randrange(nb)))
    rng.shuffle(edges)
    return BipartiteGraph(na, nb, tuple(edges), rng.randrange(len(edges)))
