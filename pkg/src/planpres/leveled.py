"""Leveled graphs in a slab S^2 x I, their unknottedness certificates and
complements.

Between two levels where a component of M has only nested saddles and
internal extrema, that component is the complement of a graph in the slab.
Boundary circles of the level component trace out the edges, lower saddles
become Y-vertices (two edges leave upwards), upper saddles become
lambda-vertices (two edges arrive from below), and internal extrema cap edges
off.  Only monotone edges are representable.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .sweep import Birth, Death, Merge, Trace

__all__ = [
    "LeveledGraphError",
    "LVertex",
    "LeveledGraph",
    "UnknotCertificate",
    "HandlebodySum",
    "parse_lg",
    "dump_lg",
    "extract_leveled_graph",
    "check_unknotted",
    "candidate_heights",
    "certificate_holds",
    "certify_stacked",
    "equivalence_invariants",
    "complement_structure",
    "canonical_graph",
    "random_leveled_graph",
]

BOTTOM = "boundary-bottom"
TOP = "boundary-top"
INTERIOR = "interior"
KINDS = (BOTTOM, TOP, INTERIOR)
AMBIENTS = ("ball", "sphere", "shell")


class LeveledGraphError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class LVertex:
    id: str
    height: Fraction
    kind: str

    @property
    def boundary(self) -> bool:
        return self.kind != INTERIOR


@dataclass(frozen=True, eq=False)
class LeveledGraph:
    vertices: tuple
    edges: tuple  # (id, id) pairs; repeats are parallel edges
    tiny_circles: dict = field(default_factory=dict)  # representative vertex id -> count

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise LeveledGraphError("; ".join(problems))

    # -- structure --------------------------------------------------------

    @property
    def by_id(self) -> dict[str, LVertex]:
        return {v.id: v for v in self.vertices}

    def height(self, vid: str) -> Fraction:
        return self.by_id[vid].height

    @property
    def interior(self) -> list[LVertex]:
        return sorted((v for v in self.vertices if not v.boundary), key=lambda v: v.height)

    @property
    def boundary_labels(self) -> set[str]:
        return {v.id for v in self.vertices if v.boundary}

    def valence(self, vid: str) -> int:
        return sum((a == vid) + (b == vid) for a, b in self.edges)

    def ends(self, vid: str) -> tuple[int, int]:
        """(edges arriving from below, edges leaving upwards) at ``vid``."""
        h = self.height(vid)
        down = up = 0
        for a, b in self.edges:
            for x, y in ((a, b), (b, a)):
                if x == vid:
                    if self.height(y) < h:
                        down += 1
                    else:
                        up += 1
        return down, up

    def is_Y(self, vid: str) -> bool:
        return self.ends(vid)[1] >= 2

    def is_lambda(self, vid: str) -> bool:
        return self.ends(vid)[0] >= 2

    @property
    def y_vertices(self) -> list[LVertex]:
        return [v for v in self.interior if self.is_Y(v.id)]

    @property
    def lambda_vertices(self) -> list[LVertex]:
        return [v for v in self.interior if self.is_lambda(v.id)]

    def components(self) -> list[list[str]]:
        parent = {v.id: v.id for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups = defaultdict(list)
        for v in self.vertices:
            groups[find(v.id)].append(v.id)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])

    def component_records(self) -> list[dict]:
        out = []
        for comp in self.components():
            ids = set(comp)
            e = sum(1 for a, _ in self.edges if a in ids)
            tiny = sum(n for rep, n in self.tiny_circles.items() if rep in ids)
            b = sum(1 for v in comp if self.by_id[v].boundary)
            out.append(
                {
                    "vertices": comp,
                    "boundary": sorted(v for v in comp if self.by_id[v].boundary),
                    "edges": e,
                    "tiny_circles": tiny,
                    "boundary_points": b,
                    "chi": len(comp) - e - tiny,
                }
            )
        return out

    @property
    def chi(self) -> int:
        return len(self.vertices) - len(self.edges) - sum(self.tiny_circles.values())

    @property
    def slab(self) -> tuple[Fraction, Fraction]:
        hs = [v.height for v in self.vertices]
        bottoms = [v.height for v in self.vertices if v.kind == BOTTOM]
        tops = [v.height for v in self.vertices if v.kind == TOP]
        lo = bottoms[0] if bottoms else (min(hs) - Fraction(1, 2) if hs else Fraction(0))
        hi = tops[0] if tops else (max(hs) + Fraction(1, 2) if hs else Fraction(1))
        return lo, hi

    def violations(self) -> list[str]:
        out = []
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            out.append("duplicate vertex id")
        known = set(ids)
        for v in self.vertices:
            if v.kind not in KINDS:
                out.append(f"vertex {v.id}: unknown kind {v.kind!r}")
        heights = {v.id: v.height for v in self.vertices}
        for a, b in self.edges:
            if a not in known or b not in known:
                out.append(f"edge {a}-{b} names an unknown vertex")
            elif heights[a] == heights[b]:
                out.append(f"edge {a}-{b} is not monotone: both ends at height {heights[a]}")
        if out:
            return out
        inner = [v.height for v in self.vertices if not v.boundary]
        if len(set(inner)) != len(inner):
            out.append("two interior vertices share a height")
        bottoms = {v.height for v in self.vertices if v.kind == BOTTOM}
        tops = {v.height for v in self.vertices if v.kind == TOP}
        if len(bottoms) > 1 or len(tops) > 1:
            out.append("boundary vertices of one side must share a height")
        lo, hi = self.slab
        if lo >= hi:
            out.append("bottom boundary is not below top boundary")
        for v in self.vertices:
            if v.boundary and self.valence(v.id) != 1:
                out.append(f"boundary vertex {v.id} has valence {self.valence(v.id)}, expected 1")
            if not v.boundary and not lo < v.height < hi:
                out.append(f"interior vertex {v.id} lies outside the slab")
        for rep, n in self.tiny_circles.items():
            if rep not in known:
                out.append(f"tiny circles attached to unknown vertex {rep}")
            if n < 0:
                out.append("negative tiny-circle count")
        return out

    # -- cutting ----------------------------------------------------------

    def above(self, t: Fraction) -> "LeveledGraph":
        """The part of the graph above the generic level ``t``; each edge
        crossing ``t`` gets a new bottom boundary vertex there."""
        keep = {v.id for v in self.vertices if v.height > t}
        verts = [v for v in self.vertices if v.id in keep]
        edges = []
        n = 0
        for a, b in self.edges:
            if a in keep and b in keep:
                edges.append((a, b))
            elif a in keep or b in keep:
                n += 1
                cut = f"cut{n}"
                while cut in keep:
                    cut += "'"
                verts.append(LVertex(cut, t, BOTTOM))
                edges.append((cut, a if a in keep else b))
        return LeveledGraph(tuple(verts), tuple(edges))

    def as_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v.id, "height": str(v.height), "kind": v.kind}
                for v in sorted(self.vertices, key=lambda v: (v.height, v.id))
            ],
            "edges": [list(e) for e in self.edges],
            "tiny_circles": dict(sorted(self.tiny_circles.items())),
            "chi": self.chi,
            "y_vertices": [v.id for v in self.y_vertices],
            "lambda_vertices": [v.id for v in self.lambda_vertices],
        }


# -- .lg files ----------------------------------------------------------------


def parse_lg(text: str) -> LeveledGraph:
    """Read the ``.lg`` format.

    >>> g = parse_lg("vertices:\\nb 0 boundary-bottom\\nx 1/2 interior\\nedges:\\nb x")
    >>> g.chi
    1
    """
    section = None
    verts, edges, tiny = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "vertices:":
            section = "v"
            continue
        if line == "edges:":
            section = "e"
            continue
        if line.startswith("circles:"):
            for item in line[len("circles:") :].split():
                rep, sep, count = item.partition("=")
                if not sep or not count.isdigit():
                    raise LeveledGraphError(f"bad circles entry {item!r}", lineno)
                tiny[rep] = tiny.get(rep, 0) + int(count)
            continue
        parts = line.split()
        if section == "v":
            if len(parts) != 3:
                raise LeveledGraphError("vertex lines are 'id height kind'", lineno)
            try:
                h = Fraction(parts[1])
            except ValueError:
                raise LeveledGraphError(f"bad height {parts[1]!r}", lineno) from None
            if parts[2] not in KINDS:
                raise LeveledGraphError(f"unknown kind {parts[2]!r}", lineno)
            verts.append(LVertex(parts[0], h, parts[2]))
        elif section == "e":
            if len(parts) != 2:
                raise LeveledGraphError("edge lines are 'id1 id2'", lineno)
            edges.append((parts[0], parts[1]))
        else:
            raise LeveledGraphError("expected a 'vertices:' header", lineno)
    return LeveledGraph(tuple(verts), tuple(edges), tiny)


def dump_lg(g: LeveledGraph) -> str:
    lines = ["vertices:"]
    for v in sorted(g.vertices, key=lambda v: (v.height, v.id)):
        lines.append(f"{v.id} {v.height} {v.kind}")
    lines.append("edges:")
    lines += [f"{a} {b}" for a, b in g.edges]
    if g.tiny_circles:
        lines.append("circles: " + " ".join(f"{k}={n}" for k, n in sorted(g.tiny_circles.items())))
    return "\n".join(lines) + "\n"


# -- extraction ---------------------------------------------------------------


def _touches(event, before, after, face: str) -> bool:
    circles = []
    if isinstance(event, Birth):
        return event.host == face or event.face == face
    if isinstance(event, Death):
        circles = [(before, event.circle)]
    elif isinstance(event, Merge):
        circles = [(before, event.circle_a), (before, event.circle_b), (after, event.new_circle)]
    else:
        circles = [(before, event.circle), (after, event.new_circle_a), (after, event.new_circle_b)]
    return any(face in state.circles[c] for state, c in circles)


def extract_leveled_graph(trace: Trace, interval: tuple[int, int], component: str) -> LeveledGraph:
    """The graph whose complement is ``component`` over events ``lo..hi``.

    ``component`` names the in-M face whose worldline is followed.
    """
    lo, hi = interval
    n = len(trace)
    if not 1 <= lo <= hi <= n:
        raise LeveledGraphError(f"interval {lo}..{hi} outside events 1..{n}")
    start = trace.states[lo - 1]
    if component not in start.in_faces:
        raise LeveledGraphError(f"{component} is not a component of M just below event {lo}")
    verts: list[LVertex] = []
    edges: list[tuple[str, str]] = []
    current: dict[str, str] = {}
    bottom = Fraction(2 * lo - 1, 2)
    for i, c in enumerate(sorted(start.incident(component)), 1):
        verts.append(LVertex(f"b{i}", bottom, BOTTOM))
        current[c] = f"b{i}"
    for k in range(lo, hi + 1):
        event, before, after = trace.event(k), trace.states[k - 1], trace.states[k]
        if not _touches(event, before, after, component):
            continue
        cls = trace.cls(k)
        if cls.is_cut:
            raise LeveledGraphError(f"event {k} is a {cls} of {component}; only nested saddles and internal extrema are allowed", None)
        h = Fraction(k)
        if isinstance(event, Birth):
            vid = f"min{k}"
            verts.append(LVertex(vid, h, INTERIOR))
            current[event.circle] = vid
        elif isinstance(event, Death):
            vid = f"max{k}"
            verts.append(LVertex(vid, h, INTERIOR))
            edges.append((current.pop(event.circle), vid))
        elif isinstance(event, Merge):
            vid = f"L{k}"
            verts.append(LVertex(vid, h, INTERIOR))
            edges.append((current.pop(event.circle_a), vid))
            edges.append((current.pop(event.circle_b), vid))
            current[event.new_circle] = vid
        else:
            vid = f"Y{k}"
            verts.append(LVertex(vid, h, INTERIOR))
            edges.append((current.pop(event.circle), vid))
            current[event.new_circle_a] = vid
            current[event.new_circle_b] = vid
    top = Fraction(2 * hi + 1, 2)
    end = trace.states[hi]
    for i, c in enumerate(sorted(end.incident(component)), 1):
        verts.append(LVertex(f"t{i}", top, TOP))
        edges.append((current[c], f"t{i}"))
    return LeveledGraph(tuple(verts), tuple(edges))


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class UnknotCertificate:
    rule: str  # Ex3.6 | Ex3.7 | Ex3.8 | unknown
    split_height: Fraction | None = None
    sub: "UnknotCertificate | None" = None

    @property
    def certified(self) -> bool:
        return self.rule != "unknown"

    def as_dict(self) -> dict:
        d: dict = {"rule": self.rule}
        if self.split_height is not None:
            d["split_height"] = str(self.split_height)
        if self.sub is not None:
            d["sub"] = self.sub.as_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "UnknotCertificate":
        t = d.get("split_height")
        sub = d.get("sub")
        return cls(d["rule"], None if t is None else Fraction(t), None if sub is None else cls.from_dict(sub))


UNKNOWN = UnknotCertificate("unknown")


def _generic(g: LeveledGraph, t: Fraction) -> bool:
    lo, hi = g.slab
    return lo < t < hi and all(v.height != t for v in g.vertices)


def _ex36(g: LeveledGraph) -> bool:
    return not g.y_vertices


def _ex37(g: LeveledGraph, t: Fraction) -> bool:
    return (
        _generic(g, t)
        and all(v.height < t for v in g.lambda_vertices)
        and all(v.height > t for v in g.y_vertices)
    )


def _lower_y_free(g: LeveledGraph, t: Fraction) -> bool:
    return all(v.height > t for v in g.y_vertices)


def certificate_holds(g: LeveledGraph, cert: UnknotCertificate) -> bool:
    """Re-check a certificate's conditions from ``g`` alone."""
    if cert.rule == "Ex3.6":
        return _ex36(g)
    if cert.rule == "Ex3.7":
        return cert.split_height is not None and _ex37(g, cert.split_height)
    if cert.rule == "Ex3.8":
        t = cert.split_height
        if t is None or cert.sub is None or not _generic(g, t) or not _lower_y_free(g, t):
            return False
        return certificate_holds(g.above(t), cert.sub)
    return False


def _midpoints(heights: Iterable[Fraction]) -> list[Fraction]:
    hs = sorted(set(heights))
    return [(a + b) / 2 for a, b in zip(hs, hs[1:])]


def candidate_heights(g: LeveledGraph) -> list[Fraction]:
    """One generic height per gap between consecutive vertex heights and
    slab ends, lowest first."""
    lo, hi = g.slab
    return [t for t in _midpoints([lo, hi, *(v.height for v in g.vertices)]) if lo < t < hi]


def check_unknotted(g: LeveledGraph) -> UnknotCertificate:
    """First applicable rule among Ex3.6, Ex3.7 (lowest t first) and Ex3.8
    (split heights top-down, recursing on the part above), else unknown.

    >>> g = parse_lg("vertices:\\nb1 0 boundary-bottom\\nb2 0 boundary-bottom\\n"
    ...              "x 1/2 interior\\nt 1 boundary-top\\nedges:\\nb1 x\\nb2 x\\nx t")
    >>> check_unknotted(g).rule
    'Ex3.6'
    """
    return _check(g, {})


def _check(g: LeveledGraph, memo: dict) -> UnknotCertificate:
    key = tuple(v.id for v in g.interior)
    if key in memo:
        return memo[key]
    memo[key] = UNKNOWN  # guards the recursion; overwritten below
    if _ex36(g):
        cert = UnknotCertificate("Ex3.6")
    else:
        cert = next(
            (UnknotCertificate("Ex3.7", t) for t in candidate_heights(g) if _ex37(g, t)),
            UNKNOWN,
        )
    if not cert.certified:
        inner = [v.height for v in g.interior]
        for t in reversed(_midpoints(inner)):
            if not _lower_y_free(g, t):
                continue
            sub = _check(g.above(t), memo)
            if sub.certified:
                cert = UnknotCertificate("Ex3.8", t, sub)
                break
    memo[key] = cert
    return cert


def certify_stacked(g: LeveledGraph, t: Fraction, upper: UnknotCertificate) -> UnknotCertificate:
    """An Ex3.8 certificate from a certificate already known for the part
    above ``t``; raises if the conditions fail."""
    cert = UnknotCertificate("Ex3.8", Fraction(t), upper)
    if not certificate_holds(g, cert):
        raise LeveledGraphError(f"Ex3.8 does not apply at t = {t}")
    return cert


# -- equivalence and complements ----------------------------------------------


def equivalence_invariants(g1: LeveledGraph, g2: LeveledGraph) -> tuple[bool, dict]:
    """Compare the boundary partitions and per-component Euler
    characteristics.  Decides equivalence rel boundary for unknotted graphs;
    for other graphs agreement is only necessary."""
    if g1.boundary_labels != g2.boundary_labels:
        raise LeveledGraphError(
            f"boundary labels differ: {sorted(g1.boundary_labels ^ g2.boundary_labels)}"
        )

    def keyed(g):
        with_b = {tuple(r["boundary"]): r["chi"] for r in g.component_records() if r["boundary"]}
        closed = sorted(r["chi"] for r in g.component_records() if not r["boundary"])
        return with_b, closed

    b1, c1 = keyed(g1)
    b2, c2 = keyed(g2)
    partition_ok = set(b1) == set(b2)
    chi_mismatch = [
        {"boundary": list(k), "chi": [b1[k], b2[k]]} for k in sorted(set(b1) & set(b2)) if b1[k] != b2[k]
    ]
    report = {
        "partition_match": partition_ok,
        "partition": [sorted(map(list, b1)), sorted(map(list, b2))],
        "chi_mismatches": chi_mismatch,
        "closed_components": [c1, c2],
    }
    ok = partition_ok and not chi_mismatch and c1 == c2
    report["equivalent"] = ok
    return ok, report


@dataclass(frozen=True)
class HandlebodySum:
    ambient: str
    components: tuple  # dicts: chi, boundary_points, genus, punctured
    certificate: UnknotCertificate

    @property
    def genera(self) -> list[int]:
        return [c["genus"] for c in self.components if not c["punctured"]]

    @property
    def punctured(self) -> list[int]:
        return [c["genus"] for c in self.components if c["punctured"]]

    @property
    def total_genus(self) -> int:
        return sum(c["genus"] for c in self.components)

    def describe(self) -> str:
        parts = [f"H{g}" for g in self.genera] + [f"H{g}*" for g in self.punctured]
        return " # ".join(parts) if parts else "B3"

    def as_dict(self) -> dict:
        return {
            "ambient": self.ambient,
            "components": list(self.components),
            "genera": self.genera,
            "punctured": self.punctured,
            "total_genus": self.total_genus,
            "description": self.describe(),
            "certificate": self.certificate.as_dict(),
        }


def complement_structure(
    g: LeveledGraph, ambient: str = "ball", certificate: UnknotCertificate | None = None
) -> HandlebodySum:
    """Handlebody summands of the complement of a certified unknotted graph.

    A component with ``b >= 1`` boundary points contributes a handlebody of
    genus ``b - chi``; a closed component contributes genus ``1 - chi``, as a
    punctured factor unless the ambient space is the sphere.
    """
    if ambient not in AMBIENTS:
        raise LeveledGraphError(f"ambient must be one of {', '.join(AMBIENTS)}")
    cert = certificate if certificate is not None else check_unknotted(g)
    if not cert.certified:
        raise LeveledGraphError("graph is not certified unknotted; refusing to describe its complement")
    if not certificate_holds(g, cert):
        raise LeveledGraphError(f"supplied {cert.rule} certificate does not hold")
    comps = []
    for r in g.component_records():
        b, chi = r["boundary_points"], r["chi"]
        # in S^3 a closed component leaves an honest handlebody; in a ball or shell it is punctured
        punctured = b == 0 and ambient != "sphere"
        comps.append(
            {
                "vertices": r["vertices"],
                "chi": chi,
                "boundary_points": b,
                "genus": 1 - chi if b == 0 else b - chi,
                "punctured": punctured,
            }
        )
    return HandlebodySum(ambient, tuple(comps), cert)


def canonical_graph(specs: Sequence[tuple[Sequence[str], int]]) -> LeveledGraph:
    """An unknotted representative with prescribed invariants.

    Each entry is (boundary labels, chi).  The component is a cone on its
    boundary points, which sit at the bottom of the slab, with ``1 - chi``
    tiny circles; it has no Y-vertices.
    """
    verts, edges, tiny = [], [], {}
    for i, (labels, chi) in enumerate(specs, 1):
        centre = f"c{i}"
        verts.append(LVertex(centre, Fraction(i, len(specs) + 1), INTERIOR))
        for lab in labels:
            verts.append(LVertex(lab, Fraction(0), BOTTOM))
            edges.append((lab, centre))
        if 1 - chi < 0:
            raise LeveledGraphError(f"a connected graph has chi <= 1, got {chi}")
        if chi != 1:
            tiny[centre] = 1 - chi
    return LeveledGraph(tuple(verts), tuple(edges), tiny)


# -- random graphs for property tests -----------------------------------------


def random_leveled_graph(rng: random.Random, interior: int = 6, boundary: int = 4, edges: int = 8) -> LeveledGraph:
    """A random monotone leveled graph on the slab [0, 1]."""
    verts = []
    hs = rng.sample(range(1, 10 * interior + 1), interior)
    denom = 10 * interior + 1
    inner = [LVertex(f"v{i}", Fraction(h, denom), INTERIOR) for i, h in enumerate(sorted(hs))]
    verts += inner
    es = []
    for i in range(boundary if inner else 0):
        kind = rng.choice((BOTTOM, TOP))
        b = LVertex(f"{'b' if kind == BOTTOM else 't'}{i}", Fraction(kind == TOP), kind)
        verts.append(b)
        if inner:
            es.append((b.id, rng.choice(inner).id))
    if len(inner) >= 2:
        for _ in range(edges):
            u, w = rng.sample(inner, 2)
            es.append((u.id, w.id))
    return LeveledGraph(tuple(verts), tuple(es))
