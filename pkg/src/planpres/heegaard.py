"""Re-embedding plans over a connectivity tree.

When the connectivity graph of a presentation is a tree, M is braid
equivalent to an unknotted graph complement.  The plan mirrors the induction
behind that statement: every piece of M between consecutive cut levels is a
leaf certified from its nested events alone, and the pieces are assembled
across cut levels by four kinds of step:

* ``NestedInterval`` (leaf): a chain of runs of nested saddles of one kind.
  Runs that extend the certified part by piling on need nothing; runs of the
  other kind are glued on through a level sphere, recording the gluing graph
  and, when our skip rule cannot rule it out, a braid move.
* ``GlueAcross``: the piece continues through a cut level of another part of
  M; the material beyond is already certified and the leaf grows toward it.
* ``CombineLower``: the piece is the single side of an unnested saddle whose
  two other sides are certified; no braid move is needed.
* ``TurnSaddle``: the piece is one of the two sides of an unnested saddle;
  the third side and the sibling are certified, and the piece's own surface
  is reached by cutting off and regluing the third side.

Upper-saddle configurations are the height reflections of lower-saddle ones;
steps record which way they face.
"""
from __future__ import annotations

import json
from fractions import Fraction
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Any

from .connectivity import ConnectivityGraph, build_connectivity_graph, fox_decision
from .leveled import (
    BOTTOM,
    TOP,
    HandlebodySum,
    LeveledGraph,
    LVertex,
    UnknotCertificate,
    canonical_graph,
    certificate_holds,
    check_unknotted,
    complement_structure,
    extract_leveled_graph,
    _touches,
)
from .surfaces import GluingGraph, SurfaceIndex, needs_braid, region_gluing_graph
from .sweep import Merge, Presentation, PresentationError, Split, Trace, random_presentation, simulate


__all__ = [
    "NotATree",
    "Step",
    "Segment",
    "BraidMove",
    "ReimbeddingPlan",
    "PlanReport",
    "plan_reimbedding",
    "verify_plan",
    "random_tree_presentation",
]


class NotATree(PresentationError):
    def __init__(self, witness: dict | None):
        self.witness = witness
        where = f" (edge at cut {witness['cut']} on face {witness['face']} lies on a cycle)" if witness else ""
        super().__init__(f"connectivity graph is not a tree{where}")


@dataclass
class BraidMove:
    level: int  # gap ordinal of the regular level
    surface: str  # in-M face cut along
    needed: bool
    note: str = "existence only: the regluing map is not materialized"

    def as_dict(self) -> dict:
        return {"level": self.level, "surface": self.surface, "needed": self.needed, "note": self.note}

    @classmethod
    def from_dict(cls, d: dict) -> "BraidMove":
        return cls(int(d["level"]), d["surface"], bool(d["needed"]), d.get("note", cls.note))


@dataclass
class Segment:
    interval: tuple | None  # (first event, last event); None for a piece with no nested events
    kind: str  # upper | lower | plain
    certificate: UnknotCertificate | None
    attach: str  # base | pile-on | glue
    gluing_graph: GluingGraph | None = None
    braid_move: BraidMove | None = None

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"interval": None if self.interval is None else list(self.interval), "kind": self.kind}
        d["attach"] = self.attach
        d["certificate"] = None if self.certificate is None else self.certificate.as_dict()
        if self.gluing_graph is not None:
            d["gluing_graph"] = self.gluing_graph.as_dict()
        if self.braid_move is not None:
            d["braid_move"] = self.braid_move.as_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Segment":
        return cls(
            None if d.get("interval") is None else tuple(d["interval"]),
            d["kind"],
            None if d.get("certificate") is None else UnknotCertificate.from_dict(d["certificate"]),
            d["attach"],
            None if d.get("gluing_graph") is None else GluingGraph.from_dict(d["gluing_graph"]),
            None if d.get("braid_move") is None else BraidMove.from_dict(d["braid_move"]),
        )


@dataclass
class Step:
    kind: str  # NestedInterval | GlueAcross | CombineLower | TurnSaddle
    vertex: int | None = None
    face: str | None = None
    near: str | None = None  # end of the piece facing the parent: top | bottom
    slab: tuple | None = None  # cut ordinals below and above the piece
    saddle: int | None = None
    orientation: str | None = None  # up | down: where the far side lies
    reflected: bool | None = None
    grow: str | None = None
    gluing_graph: GluingGraph | None = None
    braid_move: BraidMove | None = None
    segments: list = field(default_factory=list)
    children: list = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind}
        for key in ("vertex", "face", "near"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        if self.slab is not None:
            d["interval"] = list(self.slab)
        for key in ("saddle", "orientation", "reflected", "grow"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        if self.gluing_graph is not None:
            d["gluing_graph"] = self.gluing_graph.as_dict()
        if self.braid_move is not None:
            d["braid_move"] = self.braid_move.as_dict()
        if self.kind == "NestedInterval":
            d["certificate"] = [s.as_dict() for s in self.segments]
        d["children"] = [c.as_dict() for c in self.children]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Step":
        return cls(
            d["kind"],
            d.get("vertex"),
            d.get("face"),
            d.get("near"),
            None if d.get("interval") is None else tuple(d["interval"]),
            d.get("saddle"),
            d.get("orientation"),
            d.get("reflected"),
            d.get("grow"),
            None if d.get("gluing_graph") is None else GluingGraph.from_dict(d["gluing_graph"]),
            None if d.get("braid_move") is None else BraidMove.from_dict(d["braid_move"]),
            [Segment.from_dict(s) for s in d.get("certificate") or []],
            [cls.from_dict(c) for c in d.get("children", [])],
        )


@dataclass
class ReimbeddingPlan:
    name: str
    roots: list  # one Step per component of M
    terminal: HandlebodySum | None
    boundary_genera: list  # per component of M, genera of its boundary surfaces

    def steps(self):
        for r in self.roots:
            yield from r.walk()

    def braid_moves(self) -> list[BraidMove]:
        out = []
        for s in self.steps():
            if s.braid_move is not None:
                out.append(s.braid_move)
            for seg in s.segments:
                if seg.braid_move is not None:
                    out.append(seg.braid_move)
        return out

    @property
    def braid_count(self) -> int:
        return sum(b.needed for b in self.braid_moves())

    def counts(self) -> dict[str, int]:
        c = Counter(s.kind for s in self.steps())
        return {k: c.get(k, 0) for k in ("NestedInterval", "GlueAcross", "CombineLower", "TurnSaddle")}

    def as_dict(self) -> dict:
        terminal = self.terminal
        return {
            "name": self.name,
            "steps": [r.as_dict() for r in self.roots],
            "counts": self.counts(),
            "braid_moves": self.braid_count,
            "boundary_genera": self.boundary_genera,
            "terminal": {
                "genera": terminal.genera if terminal else [],
                "punctured": terminal.punctured if terminal else [],
                "total_genus": terminal.total_genus if terminal else 0,
                "description": terminal.describe() if terminal else "",
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "ReimbeddingPlan":
        genera = [list(gs) for gs in d.get("boundary_genera", [])]
        return cls(d.get("name", ""), [Step.from_dict(s) for s in d["steps"]], _handlebodies(genera), genera)


# -- shared structure ---------------------------------------------------------


class _Tree:
    """The connectivity graph read as a tree of pieces joined at cuts."""

    def __init__(self, trace: Trace):
        self.trace = trace
        self.graph: ConnectivityGraph = build_connectivity_graph(trace)
        self.surfaces = SurfaceIndex(trace)
        self.at_cut: dict[tuple[int, int], list[int]] = defaultdict(list)  # (vertex, cut) -> neighbours
        for e in self.graph.edges:
            self.at_cut[(e.below, e.cut)].append(e.above)
            self.at_cut[(e.above, e.cut)].append(e.below)
        self.cells: dict[int, list] = defaultdict(list)
        for cell, vid in self.graph.cells.items():
            self.cells[vid].append(cell)

    def vertex(self, vid: int):
        return self.graph.vertices[vid]

    def far_cut(self, vid: int, near: str) -> int:
        v = self.vertex(vid)
        return v.lo if near == "top" else v.hi

    def near_side_of(self, vid: int, cut: int) -> str:
        return "bottom" if self.vertex(vid).lo == cut else "top"

    def configuration(self, vid: int, cut: int) -> tuple:
        """How the piece meets a cut: ("end",), ("pass", d), ("single", d1, d2)
        or ("pair", w3, sibling)."""
        nbrs = self.at_cut.get((vid, cut), [])
        if not nbrs:
            return ("end",)
        if len(nbrs) == 2:
            return ("single", *sorted(nbrs))
        (d,) = nbrs
        others = self.at_cut[(d, cut)]
        if len(others) == 1:
            return ("pass", d)
        sibling = next(x for x in others if x != vid)
        return ("pair", d, sibling)

    def beyond(self, vid: int, cut: int) -> set[int]:
        """Pieces reachable from ``vid`` through ``cut`` without returning."""
        start = self.at_cut.get((vid, cut), [])
        seen = {vid}
        stack = list(start)
        out = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            out.add(x)
            v = self.vertex(x)
            for c in (v.lo, v.hi):
                stack.extend(self.at_cut.get((x, c), []))
        return out

    def region(self, vids) -> set:
        return {cell for v in vids for cell in self.cells[v]}

    def leaf_cells(self, vid: int, lo_gap: int, hi_gap: int) -> set:
        return {(f, g) for f, g in self.cells[vid] if lo_gap <= g <= hi_gap}

    def leaf_events(self, vid: int) -> list[int]:
        v = self.vertex(vid)
        t = self.trace
        return [
            k
            for k in range(v.lo + 1, v.hi)
            if _touches(t.event(k), t.states[k - 1], t.states[k], v.face)
        ]

    def interface(self, face: str, gap: int) -> list:
        circles = sorted(self.trace.states[gap].incident(face))
        return [((c, gap), (c, gap)) for c in circles]


def _saddle_kind(event) -> str | None:
    if isinstance(event, Merge):
        return "upper"
    if isinstance(event, Split):
        return "lower"
    return None


def _strands(trace: Trace, face: str, gap: int) -> LeveledGraph:
    circles = sorted(trace.states[gap].incident(face))
    verts, edges = [], []
    for i, _ in enumerate(circles, 1):
        verts += [LVertex(f"b{i}", Fraction(0), BOTTOM), LVertex(f"t{i}", Fraction(1), TOP)]
        edges.append((f"b{i}", f"t{i}"))
    return LeveledGraph(tuple(verts), tuple(edges))


def segment_graph(trace: Trace, vertex, interval) -> LeveledGraph:
    if interval is None:
        return _strands(trace, vertex.face, vertex.lo)
    return extract_leveled_graph(trace, interval, vertex.face)


# -- planning -----------------------------------------------------------------


def _segments(tree: _Tree, vid: int, near: str, attachment: set[int]) -> tuple[str, list[Segment]]:
    v = tree.vertex(vid)
    trace = tree.trace
    events = tree.leaf_events(vid)
    grow = "down" if (near == "bottom" or not attachment) else "up"
    if not events:
        g = _strands(trace, v.face, v.lo)
        return grow, [Segment(None, "plain", check_unknotted(g), "base")]
    runs: list[list] = []  # [kind, [events]]
    for k in events:
        kind = _saddle_kind(trace.event(k))
        if not runs or (kind is not None and runs[-1][0] not in (None, kind)):
            runs.append([kind, [k]])
        else:
            runs[-1][1].append(k)
            if runs[-1][0] is None:
                runs[-1][0] = kind
    bad = "lower" if grow == "down" else "upper"
    order = list(reversed(runs)) if grow == "down" else runs
    out = []
    for i, (kind, ks) in enumerate(order):
        interval = (ks[0], ks[-1])
        cert = check_unknotted(extract_leveled_graph(trace, interval, v.face))
        seg = Segment(interval, kind or "plain", cert, "base" if i == 0 else "pile-on")
        if kind == bad:
            saddles = [k for k in ks if _saddle_kind(trace.event(k))]
            if grow == "down":
                t = saddles[-1]  # the gap just above the highest saddle of the run
                below = tree.leaf_cells(vid, ks[0] - 1, t)
                above = tree.leaf_cells(vid, t, v.hi - 1) | tree.region(attachment)
            else:
                t = saddles[0] - 1  # the gap just below the lowest saddle of the run
                below = tree.leaf_cells(vid, v.lo, t) | tree.region(attachment)
                above = tree.leaf_cells(vid, t, ks[-1])
            gg = region_gluing_graph(tree.surfaces, below, above, tree.interface(v.face, t))
            seg.attach = "glue"
            seg.gluing_graph = gg
            seg.braid_move = BraidMove(t, v.face, needs_braid(gg))
        out.append(seg)
    return grow, out


def _leaf(tree: _Tree, vid: int, near: str, attachment: set[int]) -> Step:
    v = tree.vertex(vid)
    grow, segs = _segments(tree, vid, near, attachment)
    return Step("NestedInterval", vid, v.face, near, (v.lo, v.hi), grow=grow, segments=segs)


def _turn_graph(tree: _Tree, cut: int, pair_vertex: int, sibling: int, w3: int) -> GluingGraph:
    """Gluing graph of the turn: A-side is the sibling's side (M2), B-side
    the third piece's side (M3), one edge per circle of the sibling's surface
    at the saddle, the saddle circle designated."""
    trace = tree.trace
    event = trace.event(cut)
    s = tree.vertex(sibling)
    w = tree.vertex(w3)
    s_gap = cut - 1 if s.hi == cut else cut
    w_gap = cut - 1 if w.hi == cut else cut
    m2 = tree.region({sibling} | tree.beyond(sibling, cut))
    m3 = tree.region({w3} | tree.beyond(w3, cut))
    if isinstance(event, Merge):
        saddle_circle = {event.circle_a, event.circle_b}
        image = event.new_circle
    else:
        saddle_circle = {event.new_circle_a, event.new_circle_b}
        image = event.circle
    interface = []
    designated = None
    for c in sorted(trace.states[s_gap].incident(s.face)):
        if c in saddle_circle:
            designated = len(interface)
            interface.append(((c, s_gap), (image, w_gap)))
        else:
            interface.append(((c, s_gap), (c, w_gap)))
    return region_gluing_graph(tree.surfaces, m2, m3, interface, designated)


def _plan(tree: _Tree, vid: int, near: str) -> Step:
    v = tree.vertex(vid)
    cut = tree.far_cut(vid, near)
    conf = tree.configuration(vid, cut)
    orientation = "down" if near == "top" else "up"
    attachment = tree.beyond(vid, cut) if conf[0] != "end" else set()
    leaf = _leaf(tree, vid, near, attachment)
    if conf[0] == "end":
        return leaf
    if conf[0] == "pass":
        d = conf[1]
        child = _plan(tree, d, tree.near_side_of(d, cut))
        return Step("GlueAcross", vid, v.face, near, (v.lo, v.hi), orientation=orientation, children=[child, leaf])
    if conf[0] == "single":
        kids = [_plan(tree, d, tree.near_side_of(d, cut)) for d in conf[1:]]
        return Step(
            "CombineLower",
            vid,
            v.face,
            near,
            (v.lo, v.hi),
            saddle=cut,
            orientation=orientation,
            reflected=_saddle_kind(tree.trace.event(cut)) == "upper",
            children=kids + [leaf],
        )
    _, w3, sibling = conf
    gg = _turn_graph(tree, cut, vid, sibling, w3)
    w = tree.vertex(w3)
    w_gap = cut - 1 if w.hi == cut else cut
    turn = Step(
        "TurnSaddle",
        saddle=cut,
        orientation=orientation,
        reflected=_saddle_kind(tree.trace.event(cut)) == "lower",
        gluing_graph=gg,
        braid_move=BraidMove(w_gap, w.face, needs_braid(gg)),
        children=[_plan(tree, w3, tree.near_side_of(w3, cut)), _plan(tree, sibling, tree.near_side_of(sibling, cut))],
    )
    return Step("GlueAcross", vid, v.face, near, (v.lo, v.hi), orientation=orientation, children=[turn, leaf])


def _terminal(tree: _Tree) -> tuple[list[list[int]], HandlebodySum | None]:
    genera = []
    for comp in tree.graph.components():
        surfaces, _ = tree.surfaces.components(tree.region(comp))
        genera.append([s.genus for s in surfaces])
    return genera, _handlebodies(genera)


def _handlebodies(genera: list[list[int]]) -> HandlebodySum | None:
    specs = [((), 1 - g) for gs in genera for g in gs]
    return complement_structure(canonical_graph(specs), "sphere") if specs else None


def plan_reimbedding(p: Presentation | Trace) -> ReimbeddingPlan:
    """Plan a braid-equivalence from ``p`` to an unknotted graph complement.

    Raises ``NotATree`` when the connectivity graph has a cycle.
    """
    trace = p if isinstance(p, Trace) else simulate(p)
    decision = fox_decision(trace)
    if decision.verdict != "yes":
        raise NotATree(decision.witness)
    tree = _Tree(trace)
    roots = []
    for comp in tree.graph.components():
        top = max(comp, key=lambda vid: (tree.vertex(vid).hi, -vid))
        roots.append(_plan(tree, top, "top"))
    genera, terminal = _terminal(tree)
    return ReimbeddingPlan(trace.presentation.name, roots, terminal, genera)


def random_tree_presentation(rng, max_events: int = 30, name: str = "", tries: int = 1000) -> Presentation:
    """A random presentation whose connectivity graph is a tree, by rejection.

    About half of all random presentations qualify, so a handful of draws
    usually suffices.
    """
    for _ in range(tries):
        p = random_presentation(rng, max_events, name=name)
        if fox_decision(simulate(p)).verdict == "yes":
            return p
    raise RuntimeError(f"no tree presentation in {tries} draws")


# -- independent audit --------------------------------------------------------


@dataclass
class PlanReport:
    passed: bool
    failures: list
    checked: dict

    def as_dict(self) -> dict:
        return {"passed": self.passed, "failures": self.failures, "checked": self.checked}


def _root_vertex(step: Step) -> int | None:
    if step.kind == "TurnSaddle":
        return None
    return step.vertex


def verify_plan(p: Presentation | Trace, plan: ReimbeddingPlan) -> PlanReport:
    """Recheck a plan against the presentation without trusting the planner:
    leaf intervals and certificates, case preconditions at every step, saddle
    coverage, braid-move locality and the terminal Euler count."""
    trace = p if isinstance(p, Trace) else simulate(p)
    failures: list[str] = []
    checked = Counter()
    decision = fox_decision(trace)
    if decision.verdict != "yes":
        return PlanReport(False, ["connectivity graph is not a tree"], {})
    tree = _Tree(trace)
    seen_leaves: Counter = Counter()
    saddles: list[int] = []

    def fail(msg):
        failures.append(msg)

    def check_braid(b: BraidMove | None, gg: GluingGraph | None, anchors: list[int], where: str):
        if b is None or gg is None:
            fail(f"{where}: missing gluing graph or braid-move record")
            return
        if b.needed != needs_braid(gg):
            fail(f"{where}: braid-move flag disagrees with the gluing graph")
        if not any(b.level in (k - 1, k) for k in anchors):
            fail(f"{where}: braid move at level {b.level} is not adjacent to its saddle")
        checked["braid records"] += 1

    def check_leaf(step: Step, attachment: set[int]):
        vid = step.vertex
        if vid is None or not 0 <= vid < len(tree.graph.vertices):
            fail("leaf names no piece")
            return
        v = tree.vertex(vid)
        seen_leaves[vid] += 1
        where = f"leaf v{vid}"
        if step.face != v.face or tuple(step.slab or ()) != (v.lo, v.hi):
            fail(f"{where}: face or interval does not match the piece")
        events = tree.leaf_events(vid)
        for k in events:
            if trace.cls(k).is_cut:
                fail(f"{where}: event {k} is not nested")
        if not step.segments:
            fail(f"{where}: uncertified leaf")
            return
        if not events:
            if len(step.segments) != 1 or step.segments[0].interval is not None:
                fail(f"{where}: a piece without nested events has a single product segment")
        else:
            covered = []
            for seg in step.segments:
                if seg.interval is None:
                    fail(f"{where}: empty segment in a non-empty leaf")
                    continue
                covered.append([k for k in events if seg.interval[0] <= k <= seg.interval[1]])
            flat = sorted(k for ks in covered for k in ks)
            if flat != events:
                fail(f"{where}: segments do not cover the nested events exactly once")
        grow = step.grow
        bad = "lower" if grow == "down" else "upper"
        for i, seg in enumerate(step.segments):
            if seg.certificate is None or not seg.certificate.certified:
                fail(f"{where}: uncertified leaf segment {seg.interval}")
                continue
            try:
                g = segment_graph(trace, v, seg.interval)
            except Exception as exc:  # noqa: BLE001 - report, do not raise
                fail(f"{where}: segment {seg.interval} cannot be extracted: {exc}")
                continue
            if not certificate_holds(g, seg.certificate):
                fail(f"{where}: certificate {seg.certificate.rule} does not replay on {seg.interval}")
            checked["certificates"] += 1
            kinds = {_saddle_kind(trace.event(k)) for k in range(*(seg.interval or (0, -1))[:1], (seg.interval or (0, -1))[1] + 1) if k in events} - {None}
            if len(kinds) > 1:
                fail(f"{where}: segment {seg.interval} mixes upper and lower saddles")
            if kinds == {bad}:
                if seg.attach != "glue":
                    fail(f"{where}: segment {seg.interval} of {bad} saddles must be glued through a level sphere")
                    continue
                ks = [k for k in events if seg.interval[0] <= k <= seg.interval[1]]
                sad = [k for k in ks if _saddle_kind(trace.event(k))]
                if grow == "down":
                    t = sad[-1]
                    below = tree.leaf_cells(vid, ks[0] - 1, t)
                    above = tree.leaf_cells(vid, t, v.hi - 1) | tree.region(attachment)
                else:
                    t = sad[0] - 1
                    below = tree.leaf_cells(vid, v.lo, t) | tree.region(attachment)
                    above = tree.leaf_cells(vid, t, ks[-1])
                gg = region_gluing_graph(tree.surfaces, below, above, tree.interface(v.face, t))
                if seg.gluing_graph is None or not gg.same_as(seg.gluing_graph):
                    fail(f"{where}: gluing graph at level {t} does not match")
                check_braid(seg.braid_move, gg, sad, where)

    def visit(step: Step, expect_vertex: int | None, expect_near: str | None):
        if step.kind == "NestedInterval":
            if expect_vertex is not None and step.vertex != expect_vertex:
                fail(f"leaf v{step.vertex} found where v{expect_vertex} was expected")
            if step.children:
                fail(f"leaf v{step.vertex} has children")
            near = step.near or expect_near or "top"
            cut = tree.far_cut(step.vertex, near) if step.vertex is not None else None
            conf = tree.configuration(step.vertex, cut) if cut is not None else ("end",)
            if conf[0] != "end":
                fail(f"leaf v{step.vertex}: material beyond cut {cut} is not accounted for")
            check_leaf(step, set())
            return
        if step.kind == "TurnSaddle":
            fail("TurnSaddle must sit under a GlueAcross")
            return
        vid = step.vertex
        if vid is None or (expect_vertex is not None and vid != expect_vertex):
            fail(f"{step.kind}: unexpected piece v{vid}")
            return
        near = step.near
        cut = tree.far_cut(vid, near)
        conf = tree.configuration(vid, cut)
        leaf = step.children[-1] if step.children else None
        if leaf is None or leaf.kind != "NestedInterval" or leaf.vertex != vid:
            fail(f"{step.kind} at v{vid}: last child must be the piece's own leaf")
            return
        if leaf.near != near:
            fail(f"{step.kind} at v{vid}: leaf faces the wrong way")
        check_leaf(leaf, tree.beyond(vid, cut))
        if step.kind == "CombineLower":
            checked["CombineLower"] += 1
            if conf[0] != "single":
                fail(f"CombineLower at v{vid}: the piece is not the single side of a saddle at cut {cut}")
                return
            if step.saddle != cut or not trace.cls(cut).is_saddle:
                fail(f"CombineLower at v{vid}: wrong saddle")
            kind = _saddle_kind(trace.event(cut))
            want_up = kind == "lower"
            if (step.orientation == "up") != want_up or step.reflected != (kind == "upper"):
                fail(f"CombineLower at v{vid}: saddle orientation does not match the configuration")
            saddles.append(cut)
            roots = sorted(_root_vertex(c) for c in step.children[:-1])
            if roots != list(conf[1:]):
                fail(f"CombineLower at v{vid}: children are not the two far sides")
            for c in step.children[:-1]:
                visit(c, _root_vertex(c), tree.near_side_of(_root_vertex(c), cut))
            return
        if step.kind != "GlueAcross" or len(step.children) != 2:
            fail(f"unknown step {step.kind}")
            return
        checked["GlueAcross"] += 1
        inner = step.children[0]
        if conf[0] == "pass":
            if inner.kind == "TurnSaddle" or _root_vertex(inner) != conf[1]:
                fail(f"GlueAcross at v{vid}: child is not the continuation across cut {cut}")
                return
            if inner.near != tree.near_side_of(conf[1], cut):
                fail(f"GlueAcross at v{vid}: child faces the wrong way")
            visit(inner, conf[1], inner.near)
            return
        if conf[0] != "pair" or inner.kind != "TurnSaddle":
            fail(f"GlueAcross at v{vid}: configuration at cut {cut} is {conf[0]}")
            return
        checked["TurnSaddle"] += 1
        _, w3, sibling = conf
        if inner.saddle != cut:
            fail(f"TurnSaddle at v{vid}: wrong saddle")
        kind = _saddle_kind(trace.event(cut))
        if inner.reflected != (kind == "lower"):
            fail(f"TurnSaddle at v{vid}: saddle orientation does not match the configuration")
        saddles.append(cut)
        if len(inner.children) != 2 or [_root_vertex(c) for c in inner.children] != [w3, sibling]:
            fail(f"TurnSaddle at v{vid}: children must be the third side then the sibling")
            return
        gg = _turn_graph(tree, cut, vid, sibling, w3)
        if inner.gluing_graph is None or not gg.same_as(inner.gluing_graph):
            fail(f"TurnSaddle at v{vid}: gluing graph does not match")
        elif gg.designated is None:
            fail(f"TurnSaddle at v{vid}: the saddle circle is not designated")
        check_braid(inner.braid_move, gg, [cut], f"TurnSaddle at v{vid}")
        for c, x in zip(inner.children, (w3, sibling)):
            visit(c, x, tree.near_side_of(x, cut))

    comps = tree.graph.components()
    if len(plan.roots) != len(comps):
        fail(f"plan has {len(plan.roots)} roots for {len(comps)} components")
    for root, comp in zip(plan.roots, comps):
        rv = _root_vertex(root)
        if rv not in comp:
            fail(f"root v{rv} is not in component {comp}")
            continue
        if tree.configuration(rv, tree.vertex(rv).hi if root.near == "top" else tree.vertex(rv).lo)[0] != "end":
            fail(f"root v{rv} does not face an end of M")
        visit(root, rv, root.near)

    for vid in range(len(tree.graph.vertices)):
        if seen_leaves[vid] != 1:
            fail(f"piece v{vid} is covered by {seen_leaves[vid]} leaves")
    unnested = sorted(k for k in trace.cut_ordinals if trace.cls(k).is_saddle)
    if sorted(saddles) != unnested:
        fail(f"saddle coverage {sorted(saddles)} differs from unnested saddles {unnested}")
    checked["saddles"] = len(saddles)

    genera, terminal = _terminal(tree)
    if plan.boundary_genera != genera:
        fail("boundary genera do not match the presentation")
    got = plan.terminal.total_genus if plan.terminal else 0
    want = terminal.total_genus if terminal else 0
    if got != want:
        fail(f"Euler mismatch: terminal genus {got}, boundary surfaces give {want}")
    if len(genera) == 1 and len(genera[0]) == 1:
        ext = sum(1 for c in trace.classes if not c.is_saddle)
        sad = len(trace) - ext
        formula = (2 - (ext - sad)) // 2
        if got != formula:
            fail(f"Euler mismatch: terminal genus {got}, (2 - chi(dM))/2 = {formula}")
        checked["euler"] = 1
    return PlanReport(not failures, failures, dict(checked))
