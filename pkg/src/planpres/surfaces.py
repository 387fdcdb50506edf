"""Boundary-surface bookkeeping for regions of M, and gluing graphs.

A region is a set of in-M cells (face, gap).  Its boundary circles at those
gaps, joined across events, form the part of the surface dM inside the
region.  Each component of that surface corresponds to one component of the
graph whose complement the region is; a component of genus g with b boundary
circles gives a graph component with b boundary points and Euler
characteristic 1 - g.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .kernels import uf_labels
from .leveled import LeveledGraph, LeveledGraphError, TOP, BOTTOM
from .sweep import Birth, Death, Merge, Split, Trace

__all__ = ["SurfaceIndex", "SurfaceComponent", "GluingGraph", "gluing_graph", "needs_braid"]


@dataclass(frozen=True)
class SurfaceComponent:
    cells: tuple  # (circle, gap) pairs, sorted by gap then circle
    chi: int
    boundary: int
    genus: int

    @property
    def key(self) -> tuple:
        return self.cells[0][1], self.cells[0][0]

    @property
    def graph_chi(self) -> int:
        return 1 - self.genus


class SurfaceIndex:
    """Circle cells of a trace and the links between consecutive gaps."""

    def __init__(self, trace: Trace):
        self.trace = trace
        n = len(trace)
        self.down: dict = defaultdict(list)  # cell -> linked cells one gap lower
        self.up: dict = defaultdict(list)
        self.events: list = []  # (kind, cells below or at the point, cells above a saddle)
        for g in range(1, n + 1):
            before, after = trace.states[g - 1], trace.states[g]
            event = trace.event(g)
            for c in before.circles:
                if c in after.circles:
                    self._link((c, g - 1), (c, g))
            if isinstance(event, Merge):
                for c in (event.circle_a, event.circle_b):
                    self._link((c, g - 1), (event.new_circle, g))
                self.events.append(("saddle", [(event.circle_a, g - 1), (event.circle_b, g - 1)], [(event.new_circle, g)]))
            elif isinstance(event, Split):
                for c in (event.new_circle_a, event.new_circle_b):
                    self._link((event.circle, g - 1), (c, g))
                self.events.append(("saddle", [(event.circle, g - 1)], [(event.new_circle_a, g), (event.new_circle_b, g)]))
            elif isinstance(event, Birth):
                self.events.append(("extremum", [(event.circle, g)], []))
            elif isinstance(event, Death):
                self.events.append(("extremum", [(event.circle, g - 1)], []))

    def _link(self, lower, upper):
        self.down[upper].append(lower)
        self.up[lower].append(upper)

    def circle_cells(self, region: Iterable[tuple[str, int]]) -> set:
        states = self.trace.states
        return {(c, g) for f, g in region for c in states[g].incident(f)}

    def components(self, region: Iterable[tuple[str, int]]) -> tuple[list[SurfaceComponent], dict]:
        """Components of dM inside ``region`` and a map cell -> component index."""
        cells = sorted(self.circle_cells(region), key=lambda x: (x[1], x[0]))
        index = {c: i for i, c in enumerate(cells)}
        pairs = [(index[x], index[y]) for x in cells for y in self.up[x] if y in index]
        labels = uf_labels(len(cells), pairs)
        groups: dict[int, list] = defaultdict(list)
        for c, lab in zip(cells, labels):
            groups[lab].append(c)
        chi: dict[int, int] = defaultdict(int)
        for kind, lower, upper in self.events:
            if kind == "extremum":
                if lower[0] in index:
                    chi[labels[index[lower[0]]]] += 1
                continue
            # a saddle lies inside the region when cells on both sides of it do;
            # a missing leg then shows up as a boundary circle instead
            inside = [c for c in lower + upper if c in index]
            if any(c in index for c in lower) and any(c in index for c in upper):
                chi[labels[index[inside[0]]]] -= 1
        boundary: dict[int, int] = defaultdict(int)
        for c in cells:
            for side in (self.down[c], self.up[c]):
                if any(x not in index for x in side):
                    boundary[labels[index[c]]] += 1
        comps = []
        order = sorted(groups, key=lambda lab: (groups[lab][0][1], groups[lab][0][0]))
        remap = {}
        for lab in order:
            twice_genus = 2 - boundary[lab] - chi[lab]
            if twice_genus < 0 or twice_genus % 2:
                raise ValueError(f"inconsistent surface bookkeeping for cells {groups[lab][:3]}")
            remap[lab] = len(comps)
            comps.append(SurfaceComponent(tuple(groups[lab]), chi[lab], boundary[lab], twice_genus // 2))
        return comps, {c: remap[labels[index[c]]] for c in cells}


# -- gluing graphs ------------------------------------------------------------


@dataclass(frozen=True)
class GluingGraph:
    """Bipartite graph: one A-vertex per component below the interface, one
    B-vertex per component above, one edge per interface point."""

    a_labels: tuple
    b_labels: tuple
    edges: tuple  # (a index, b index)
    edge_labels: tuple
    designated: int | None = None
    a_chi: tuple = ()
    b_chi: tuple = ()

    def as_bipartite(self):
        from .bipartite import BipartiteGraph

        return BipartiteGraph(len(self.a_labels), len(self.b_labels), self.edges, self.designated or 0)

    def as_dict(self) -> dict:
        d = {
            "a": list(self.a_labels),
            "b": list(self.b_labels),
            "edges": [[a, b, lab] for (a, b), lab in zip(self.edges, self.edge_labels)],
        }
        if self.designated is not None:
            d["designated"] = self.designated
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GluingGraph":
        return cls(
            tuple(d["a"]),
            tuple(d["b"]),
            tuple((int(a), int(b)) for a, b, _ in d["edges"]),
            tuple(lab for _, _, lab in d["edges"]),
            d.get("designated"),
        )

    def same_as(self, other: "GluingGraph") -> bool:
        return self.as_dict() == other.as_dict()


def gluing_graph(
    lower: LeveledGraph,
    upper: LeveledGraph,
    interface: Mapping[str, str],
    designated: str | None = None,
) -> GluingGraph:
    """Gluing graph of two leveled graphs meeting along a level sphere.

    ``interface`` maps each top boundary vertex of ``lower`` to the bottom
    boundary vertex of ``upper`` at the same point.
    """
    tops = {v.id for v in lower.vertices if v.kind == TOP}
    bottoms = {v.id for v in upper.vertices if v.kind == BOTTOM}
    if set(interface) != tops or sorted(interface.values()) != sorted(bottoms) or len(set(interface.values())) != len(interface):
        raise LeveledGraphError("interface must biject the top of the lower graph with the bottom of the upper graph")
    if designated is not None and designated not in interface:
        raise LeveledGraphError(f"designated point {designated!r} is not an interface point")
    a_comps = lower.components()
    b_comps = upper.components()
    a_of = {v: i for i, comp in enumerate(a_comps) for v in comp}
    b_of = {v: i for i, comp in enumerate(b_comps) for v in comp}
    records = {tuple(r["vertices"]): r["chi"] for r in lower.component_records()}
    b_records = {tuple(r["vertices"]): r["chi"] for r in upper.component_records()}
    points = sorted(interface)
    edges = tuple((a_of[p], b_of[interface[p]]) for p in points)
    return GluingGraph(
        tuple(comp[0] for comp in a_comps),
        tuple(comp[0] for comp in b_comps),
        edges,
        tuple(points),
        None if designated is None else points.index(designated),
        tuple(records[tuple(c)] for c in a_comps),
        tuple(b_records[tuple(c)] for c in b_comps),
    )


def needs_braid(g: GluingGraph) -> bool:
    """Whether the gluing needs a braid move under our skip rule.

    Components meeting the interface at most once are peeled off repeatedly;
    each such component can absorb any reparametrization of its own points.
    A move is recorded only when both sides keep at least two components.
    """
    alive_a = set(range(len(g.a_labels)))
    alive_b = set(range(len(g.b_labels)))
    live_edges = list(g.edges)
    changed = True
    while changed:
        changed = False
        deg_a: dict[int, int] = defaultdict(int)
        deg_b: dict[int, int] = defaultdict(int)
        for a, b in live_edges:
            deg_a[a] += 1
            deg_b[b] += 1
        drop_a = {a for a in alive_a if deg_a[a] <= 1}
        drop_b = {b for b in alive_b if deg_b[b] <= 1}
        if drop_a or drop_b:
            changed = True
            alive_a -= drop_a
            alive_b -= drop_b
            live_edges = [(a, b) for a, b in live_edges if a in alive_a and b in alive_b]
    return len(alive_a) >= 2 and len(alive_b) >= 2


def region_gluing_graph(
    index: SurfaceIndex,
    below: set,
    above: set,
    interface: list[tuple[tuple[str, int], tuple[str, int]]],
    designated: int | None = None,
) -> GluingGraph:
    """Gluing graph between two regions; ``interface`` lists, per interface
    circle, its cell as seen from the lower region and from the upper one."""
    a_comps, a_of = index.components(below)
    b_comps, b_of = index.components(above)
    edges = tuple((a_of[x], b_of[y]) for x, y in interface)
    return GluingGraph(
        tuple(f"{c.key[1]}@{c.key[0]}" for c in a_comps),
        tuple(f"{c.key[1]}@{c.key[0]}" for c in b_comps),
        edges,
        tuple(x[0] for x, _ in interface),
        designated,
        tuple(c.graph_chi for c in a_comps),
        tuple(c.graph_chi for c in b_comps),
    )
