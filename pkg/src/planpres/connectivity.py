"""The connectivity graph of a presentation and the tree criterion.

Cut levels are the unnested saddles and the external extrema.  Cutting M along
every cut level leaves pieces whose cross-sections are all connected; those
pieces are the vertices.  Each component of a cut level (minus its critical
point) is an edge joining the piece just below it to the piece just above.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from . import kernels
from .sweep import Birth, Death, Merge, Split, Trace, dying_face, simulate

__all__ = [
    "Vertex",
    "Edge",
    "ConnectivityGraph",
    "FoxDecision",
    "OracleReport",
    "build_connectivity_graph",
    "fox_decision",
    "cross_section_oracle",
]


@dataclass(frozen=True)
class Vertex:
    id: int
    face: str
    lo: int  # ordinal of the cut below
    hi: int  # ordinal of the cut above

    @property
    def label(self) -> str:
        return f"v{self.id}"


@dataclass(frozen=True)
class Edge:
    below: int
    above: int
    cut: int
    face: str


@dataclass(frozen=True, eq=False)
class ConnectivityGraph:
    vertices: tuple
    edges: tuple
    cut_levels: tuple
    cells: dict = field(repr=False)  # (face, gap) -> vertex id

    def neighbours(self, skip: int | None = None) -> dict[int, list[int]]:
        adj = {v.id: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            if i == skip:
                continue
            adj[e.below].append(e.above)
            adj[e.above].append(e.below)
        return adj

    def components(self, skip: int | None = None) -> list[list[int]]:
        adj = self.neighbours(skip)
        seen: set[int] = set()
        comps = []
        for v in adj:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def edges_of(self, vertex_ids) -> list[int]:
        ids = set(vertex_ids)
        return [i for i, e in enumerate(self.edges) if e.below in ids]

    def has_cycle_dfs(self, vertex_ids) -> bool:
        """Independent of the edge count: look for a back edge."""
        ids = set(vertex_ids)
        incident = defaultdict(list)
        for i, e in enumerate(self.edges):
            if e.below in ids:
                incident[e.below].append((i, e.above))
                incident[e.above].append((i, e.below))
        seen: set[int] = set()
        for root in sorted(ids):
            if root in seen:
                continue
            seen.add(root)
            stack = [(root, None)]
            while stack:
                v, via = stack.pop()
                for i, w in incident[v]:
                    if i == via:
                        continue
                    if w in seen:
                        return True
                    seen.add(w)
                    stack.append((w, i))
        return False

    def is_bridge(self, index: int) -> bool:
        return len(self.components(skip=index)) > len(self.components())

    def to_dot(self, name: str = "Gamma") -> str:
        lines = [f"graph {_dot_id(name)} {{"]
        for v in self.vertices:
            lines.append(f'  v{v.id} [label="v{v.id} {v.face} ({v.lo},{v.hi})"];')
        for e in self.edges:
            lines.append(f'  v{e.below} -- v{e.above} [label="{e.cut}:{e.face}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "vertices": [{"id": v.id, "face": v.face, "slab": [v.lo, v.hi]} for v in self.vertices],
            "edges": [
                {"below": e.below, "above": e.above, "cut": e.cut, "face": e.face} for e in self.edges
            ],
            "cut_levels": list(self.cut_levels),
        }


def _dot_id(name: str) -> str:
    return name if name.replace("_", "").isalnum() else json.dumps(name)


def _as_trace(p) -> Trace:
    return p if isinstance(p, Trace) else simulate(p)


def build_connectivity_graph(trace: Trace) -> ConnectivityGraph:
    vertices: list[list] = []  # [face, lo, hi]
    edges: list[Edge] = []
    cells: dict[tuple[str, int], int] = {}
    current: dict[str, int] = {}

    def new_vertex(face: str, k: int) -> int:
        vertices.append([face, k, None])
        return len(vertices) - 1

    for k, event, before, after, cls in trace.steps():
        if cls.is_cut:
            old, current = current, {}
            dead = dying_face(before, event.circle) if isinstance(event, Death) else None
            merged = ()
            fused = None
            if isinstance(event, Merge) and cls.nesting == "unnested":
                fused = before.far(event.circle_a, event.via)
                merged = (fused, before.far(event.circle_b, event.via))
            for f in before.in_faces:
                v = old[f]
                vertices[v][2] = k
                if f == dead:
                    continue
                if f in merged:
                    if fused not in current:
                        current[fused] = new_vertex(fused, k)
                    edges.append(Edge(v, current[fused], k, f))
                elif isinstance(event, Split) and f == event.via:
                    for nf in (event.new_face_a, event.new_face_b):
                        current[nf] = new_vertex(nf, k)
                        edges.append(Edge(v, current[nf], k, nf))
                else:
                    current[f] = new_vertex(f, k)
                    edges.append(Edge(v, current[f], k, f))
            if isinstance(event, Birth):
                current[event.face] = new_vertex(event.face, k)
        for f in after.in_faces:
            cells[(f, k)] = current[f]

    verts = tuple(Vertex(i, f, lo, hi) for i, (f, lo, hi) in enumerate(vertices))
    return ConnectivityGraph(verts, tuple(edges), trace.cut_ordinals, cells)


def edge_census(trace: Trace, graph: ConnectivityGraph) -> dict[int, tuple[int, int]]:
    """Per cut level: (edges found, level components expected), recounted
    from the level states alone."""
    out = {}
    for k, event, before, after, cls in trace.steps():
        if not cls.is_cut:
            continue
        expected = max(len(before.in_faces), len(after.in_faces))
        if not cls.is_saddle:
            expected -= 1
        found = sum(1 for e in graph.edges if e.cut == k)
        out[k] = (found, expected)
    return out


# -- the tree criterion -------------------------------------------------------


@dataclass(frozen=True)
class FoxDecision:
    verdict: str  # "yes" | "no"
    witness: dict | None
    components: tuple

    def as_dict(self) -> dict:
        d = {"verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        d["components"] = list(self.components)
        return d


def fox_decision(p) -> FoxDecision:
    """Tree test on the connectivity graph, one verdict per component of M.

    When the graph is not a tree the witness is an edge that lies on a cycle:
    its level component does not separate M.
    """
    graph = p if isinstance(p, ConnectivityGraph) else build_connectivity_graph(_as_trace(p))
    comps = []
    witness = None
    for comp in graph.components():
        edge_ids = graph.edges_of(comp)
        arithmetic = len(edge_ids) == len(comp) - 1
        dfs = not graph.has_cycle_dfs(comp)
        if arithmetic != dfs:  # pragma: no cover - both are exact for connected graphs
            raise AssertionError(f"tree tests disagree on component {comp}")
        record = {"vertices": comp, "edges": edge_ids, "tree": arithmetic}
        if not arithmetic:
            i = next(i for i in edge_ids if not graph.is_bridge(i))
            e = graph.edges[i]
            w = {"edge": i, "below": e.below, "above": e.above, "cut": e.cut, "face": e.face}
            record["witness"] = w
            if witness is None:
                witness = w
        comps.append(record)
    verdict = "yes" if all(c["tree"] for c in comps) else "no"
    return FoxDecision(verdict, witness, tuple(comps))


# -- independent cross-section oracle -----------------------------------------


@dataclass(frozen=True)
class OracleReport:
    passed: bool
    components: tuple

    def as_dict(self) -> dict:
        return {"passed": self.passed, "components": list(self.components)}


def cross_section_oracle(p) -> OracleReport:
    """Recompute the pieces of M cut along its cut levels with union-find.

    Cells are (level component, gap) pairs.  Across a non-cut event two cells
    are joined when they carry the same face or share a boundary circle the
    event leaves alone.  The resulting classes must coincide with the sweep's
    vertices, and none may meet a gap twice.
    """
    trace = _as_trace(p)
    graph = build_connectivity_graph(trace)
    n = len(trace)
    cells = [(f, g) for g in range(1, n) for f in trace.states[g].in_faces]
    index = {c: i for i, c in enumerate(cells)}
    pairs = []
    for k, event, before, after, cls in trace.steps():
        if cls.is_cut or k == n or k == 1:
            continue
        for f in before.in_faces:
            for f2 in after.in_faces:
                same = f == f2
                shared = set(before.incident(f)) & set(after.incident(f2))
                if same or any(before.circles[c] == after.circles[c] for c in shared):
                    pairs.append((index[(f, k - 1)], index[(f2, k)]))
    labels = kernels.uf_labels(len(cells), pairs)
    groups: dict[int, list] = defaultdict(list)
    for c, lab in zip(cells, labels):
        groups[lab].append(c)

    by_vertex: dict[int, set] = defaultdict(set)
    for c in cells:
        by_vertex[graph.cells[c]].add(c)

    comps = []
    ok = True
    for lab in sorted(groups, key=lambda lab: groups[lab][0][1:] + groups[lab][0][:1]):
        members = groups[lab]
        vids = {graph.cells[c] for c in members}
        gaps = [g for _, g in members]
        matches = len(vids) == 1 and by_vertex[next(iter(vids))] == set(members)
        single = len(gaps) == len(set(gaps))
        passed = matches and single
        ok &= passed
        comps.append(
            {
                "cells": [[f, g] for f, g in sorted(members, key=lambda c: (c[1], c[0]))],
                "vertices": sorted(vids),
                "matches_sweep": matches,
                "one_cell_per_gap": single,
                "passed": passed,
            }
        )
    return OracleReport(ok, tuple(comps))
