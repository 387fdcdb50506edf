"""Generic level spheres as labelled face trees, and the Morse events between them.

A level sphere is cut by disjoint circles into faces.  Faces and circles form a
tree (faces are nodes, circles are edges) and every face is either inside the
manifold ``M`` or outside it, the two labels alternating across each circle.
A presentation is a word of events read bottom to top; only the order of the
events matters, never their actual heights.

Nested saddles are recognised from the label of the face the saddle band runs
through.  This is the same fact as the outward-normal description of nesting,
restated combinatorially; no normal vectors are computed.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Birth",
    "Death",
    "Merge",
    "Split",
    "EventClass",
    "LevelState",
    "Presentation",
    "Trace",
    "PresentationError",
    "ParseError",
    "SimulationError",
    "parse_presentation",
    "apply_event",
    "simulate",
    "reflect",
    "to_text",
    "random_presentation",
]

INITIAL_FACE = "f0"


class PresentationError(ValueError):
    """Base class for problems with a presentation."""


class ParseError(PresentationError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class SimulationError(PresentationError):
    def __init__(self, message: str, ordinal: int | None = None):
        self.ordinal = ordinal
        prefix = f"event {ordinal}: " if ordinal is not None else ""
        super().__init__(prefix + message)


# -- events -------------------------------------------------------------------


@dataclass(frozen=True)
class Birth:
    """A minimum: ``circle`` appears inside ``host`` and bounds the new ``face``."""

    circle: str
    host: str
    face: str


@dataclass(frozen=True)
class Death:
    """A maximum: ``circle`` shrinks to a point, taking a leaf face with it."""

    circle: str


@dataclass(frozen=True)
class Merge:
    """Upper saddle: a band through ``via`` joins two circles into ``new_circle``.

    The faces beyond the two circles fuse; the fused face keeps the name of the
    face beyond ``circle_a``.
    """

    circle_a: str
    circle_b: str
    via: str
    new_circle: str


@dataclass(frozen=True)
class Split:
    """Lower saddle: a band across ``via`` pinches ``circle`` into two circles.

    ``via`` is divided into ``new_face_a`` (bounded by ``new_circle_a`` and the
    circles listed in ``side_a``) and ``new_face_b`` (everything else).
    """

    circle: str
    via: str
    new_circle_a: str
    new_face_a: str
    side_a: tuple[str, ...]
    new_circle_b: str
    new_face_b: str


MorseEvent = Union[Birth, Death, Merge, Split]


@dataclass(frozen=True)
class EventClass:
    polarity: str  # "min" | "max" | "saddle"
    vertical: str | None = None  # "upper" | "lower", saddles only
    nesting: str | None = None  # "nested" | "unnested", saddles only
    locality: str | None = None  # "internal" | "external", extrema only

    @property
    def is_saddle(self) -> bool:
        return self.polarity == "saddle"

    @property
    def is_cut(self) -> bool:
        """Unnested saddles and external extrema are the cut levels."""
        return self.nesting == "unnested" or self.locality == "external"

    def __str__(self) -> str:
        if self.is_saddle:
            return f"{self.nesting} {self.vertical} saddle"
        return f"{self.locality} {self.polarity}"

    def as_dict(self) -> dict:
        d = {"polarity": self.polarity}
        if self.is_saddle:
            d["vertical"] = self.vertical
            d["nesting"] = self.nesting
        else:
            d["locality"] = self.locality
        return d


# -- level states -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LevelState:
    """Circle arrangement on one generic level sphere.

    ``labels`` maps each face to ``True`` when the face lies in M.  ``circles``
    maps each circle to the pair of faces it separates.
    """

    labels: dict
    circles: dict

    @classmethod
    def empty(cls, face: str = INITIAL_FACE) -> "LevelState":
        return cls({face: False}, {})

    @property
    def faces(self) -> tuple[str, ...]:
        return tuple(self.labels)

    @property
    def in_faces(self) -> tuple[str, ...]:
        return tuple(f for f, inside in self.labels.items() if inside)

    @property
    def is_empty(self) -> bool:
        return not self.circles and len(self.labels) == 1 and not any(self.labels.values())

    def incident(self, face: str) -> list[str]:
        return [c for c, pair in self.circles.items() if face in pair]

    def far(self, circle: str, face: str) -> str:
        f, g = self.circles[circle]
        return g if f == face else f

    def is_leaf(self, face: str) -> bool:
        return len(self.incident(face)) == 1

    def inside_face(self, circle: str) -> str:
        """The face of ``circle`` that lies in M."""
        f, g = self.circles[circle]
        return f if self.labels[f] else g

    def violations(self) -> list[str]:
        problems = []
        if len(self.circles) != len(self.labels) - 1:
            problems.append(f"{len(self.circles)} circles for {len(self.labels)} faces")
        for c, (f, g) in self.circles.items():
            if f == g or f not in self.labels or g not in self.labels:
                problems.append(f"circle {c} has bad faces {f}, {g}")
            elif self.labels[f] == self.labels[g]:
                problems.append(f"labels do not alternate across {c}")
        if self.labels:
            start = next(iter(self.labels))
            seen = {start}
            stack = [start]
            while stack:
                face = stack.pop()
                for c in self.incident(face):
                    other = self.far(c, face)
                    if other not in seen:
                        seen.add(other)
                        stack.append(other)
            if len(seen) != len(self.labels):
                problems.append("face tree is disconnected")
        return problems

    def check(self) -> None:
        problems = self.violations()
        if problems:
            raise AssertionError("; ".join(problems))

    def __eq__(self, other):
        if not isinstance(other, LevelState):
            return NotImplemented
        return self.labels == other.labels and {
            c: frozenset(p) for c, p in self.circles.items()
        } == {c: frozenset(p) for c, p in other.circles.items()}

    def as_dict(self) -> dict:
        return {
            "faces": {f: ("in" if v else "out") for f, v in self.labels.items()},
            "circles": {c: list(p) for c, p in self.circles.items()},
        }


def _require_live(state: LevelState, name: str, kind: str) -> None:
    pool = state.circles if kind == "circle" else state.labels
    if name not in pool:
        raise SimulationError(f"{kind} {name!r} is not live")


def _require_fresh(state: LevelState, *names: str) -> None:
    for name in names:
        if name in state.circles or name in state.labels:
            raise SimulationError(f"identifier {name!r} is already live")


def dying_face(state: LevelState, circle: str) -> str:
    """The leaf face that disappears when ``circle`` dies.

    When both sides are leaves (a two-face sphere) the face in M dies, so the
    surviving face is outside M; M never swallows a pole.
    """
    _require_live(state, circle, "circle")
    f, g = state.circles[circle]
    leaf_f, leaf_g = state.is_leaf(f), state.is_leaf(g)
    if leaf_f and leaf_g:
        return f if state.labels[f] else g
    if leaf_f:
        return f
    if leaf_g:
        return g
    raise SimulationError(f"circle {circle!r} bounds no leaf face; cannot die")


def apply_event(state: LevelState, event: MorseEvent) -> tuple[LevelState, EventClass]:
    labels = dict(state.labels)
    circles = dict(state.circles)

    if isinstance(event, Birth):
        _require_live(state, event.host, "face")
        _require_fresh(state, event.circle, event.face)
        if event.circle == event.face:
            raise SimulationError("birth reuses one identifier for circle and face")
        host_in = labels[event.host]
        labels[event.face] = not host_in
        circles[event.circle] = (event.host, event.face)
        cls = EventClass("min", locality="internal" if host_in else "external")

    elif isinstance(event, Death):
        dead = dying_face(state, event.circle)
        dead_in = labels.pop(dead)
        del circles[event.circle]
        cls = EventClass("max", locality="external" if dead_in else "internal")

    elif isinstance(event, Merge):
        if event.circle_a == event.circle_b:
            raise SimulationError("merge needs two different circles")
        for c in (event.circle_a, event.circle_b):
            _require_live(state, c, "circle")
        _require_live(state, event.via, "face")
        _require_fresh(state, event.new_circle)
        if event.via not in circles[event.circle_a] or event.via not in circles[event.circle_b]:
            raise SimulationError(
                f"circles {event.circle_a!r} and {event.circle_b!r} are not both on face {event.via!r}"
            )
        fa = state.far(event.circle_a, event.via)
        fb = state.far(event.circle_b, event.via)
        del circles[event.circle_a]
        del circles[event.circle_b]
        del labels[fb]
        for c, pair in list(circles.items()):
            if fb in pair:
                circles[c] = tuple(fa if x == fb else x for x in pair)
        circles[event.new_circle] = (event.via, fa)
        via_in = labels[event.via]
        cls = EventClass("saddle", vertical="upper", nesting="nested" if via_in else "unnested")

    elif isinstance(event, Split):
        _require_live(state, event.circle, "circle")
        _require_live(state, event.via, "face")
        new_ids = (event.new_circle_a, event.new_circle_b, event.new_face_a, event.new_face_b)
        if len(set(new_ids)) != 4:
            raise SimulationError("split introduces a repeated identifier")
        _require_fresh(state, *new_ids)
        if event.via not in circles[event.circle]:
            raise SimulationError(f"circle {event.circle!r} is not on face {event.via!r}")
        others = [c for c in state.incident(event.via) if c != event.circle]
        side_a = list(event.side_a)
        if len(set(side_a)) != len(side_a) or not set(side_a) <= set(others):
            raise SimulationError(
                f"side list {side_a} is not a subset of the other circles of {event.via!r}"
            )
        far = state.far(event.circle, event.via)
        via_in = labels.pop(event.via)
        labels[event.new_face_a] = via_in
        labels[event.new_face_b] = via_in
        del circles[event.circle]
        for c in others:
            new = event.new_face_a if c in side_a else event.new_face_b
            circles[c] = tuple(new if x == event.via else x for x in circles[c])
        circles[event.new_circle_a] = (far, event.new_face_a)
        circles[event.new_circle_b] = (far, event.new_face_b)
        cls = EventClass("saddle", vertical="lower", nesting="unnested" if via_in else "nested")

    else:
        raise TypeError(f"not a Morse event: {event!r}")

    return LevelState(labels, circles), cls


# -- presentations and traces -------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    events: tuple
    name: str = ""
    heights: tuple | None = None

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True, eq=False)
class Trace:
    """A full sweep.  ``states[k]`` is the level just above event ``k``
    (``states[0]`` is below everything); event ordinals start at 1."""

    presentation: Presentation
    states: tuple
    classes: tuple

    def __len__(self) -> int:
        return len(self.classes)

    def event(self, ordinal: int) -> MorseEvent:
        return self.presentation.events[ordinal - 1]

    def cls(self, ordinal: int) -> EventClass:
        return self.classes[ordinal - 1]

    def steps(self) -> Iterator[tuple[int, MorseEvent, LevelState, LevelState, EventClass]]:
        for k, (event, cls) in enumerate(zip(self.presentation.events, self.classes), 1):
            yield k, event, self.states[k - 1], self.states[k], cls

    @property
    def in_faces(self) -> tuple[tuple[str, ...], ...]:
        """In-M faces (the components of the level planar surface) above each event."""
        return tuple(s.in_faces for s in self.states[1:])

    @property
    def census(self) -> tuple[int, ...]:
        """Number of level components in each gap between consecutive events."""
        return tuple(len(s.in_faces) for s in self.states[1:-1])

    @property
    def cut_ordinals(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.classes, 1) if c.is_cut)

    def as_dict(self) -> dict:
        return {
            "name": self.presentation.name,
            "events": [
                {"ordinal": k, "text": _event_text(e), "class": str(c), "in_faces": list(a.in_faces)}
                for k, e, _, a, c in self.steps()
            ],
            "census": list(self.census),
        }


def simulate(p: Presentation) -> Trace:
    state = LevelState.empty()
    seen = {INITIAL_FACE}
    states = [state]
    classes = []
    for k, event in enumerate(p.events, 1):
        introduced = _introduced(event)
        for name in introduced:
            if name in seen:
                raise SimulationError(f"identifier {name!r} was used before", k)
        try:
            state, cls = apply_event(state, event)
        except SimulationError as exc:
            raise SimulationError(str(exc), k) from None
        seen.update(introduced)
        states.append(state)
        classes.append(cls)
    if not state.is_empty:
        raise SimulationError(
            "non-empty final state: M touches a pole or is unclosed "
            "(remove the ball above the highest maximum first)"
        )
    return Trace(p, tuple(states), tuple(classes))


def _introduced(event: MorseEvent) -> tuple[str, ...]:
    if isinstance(event, Birth):
        return (event.circle, event.face)
    if isinstance(event, Merge):
        return (event.new_circle,)
    if isinstance(event, Split):
        return (event.new_circle_a, event.new_circle_b, event.new_face_a, event.new_face_b)
    return ()


def _referenced(event: MorseEvent) -> tuple[str, ...]:
    if isinstance(event, Birth):
        return (event.host,)
    if isinstance(event, Death):
        return (event.circle,)
    if isinstance(event, Merge):
        return (event.circle_a, event.circle_b, event.via)
    return (event.circle, event.via) + tuple(event.side_a)


# -- the DSL ------------------------------------------------------------------

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_HEIGHT = r"(?:\s+@\s*(?P<height>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?))?"
_PATTERNS = {
    "min": re.compile(rf"min\s+(?P<c>{_IDENT})\s+in\s+(?P<host>{_IDENT})\s+new\s+(?P<f>{_IDENT}){_HEIGHT}$"),
    "max": re.compile(rf"max\s+(?P<c>{_IDENT}){_HEIGHT}$"),
    "merge": re.compile(
        rf"merge\s+(?P<a>{_IDENT})\s+(?P<b>{_IDENT})\s+in\s+(?P<via>{_IDENT})\s+as\s+(?P<c>{_IDENT}){_HEIGHT}$"
    ),
    "split": re.compile(
        rf"split\s+(?P<c>{_IDENT})\s+thru\s+(?P<via>{_IDENT})\s+as\s+"
        rf"(?P<ca>{_IDENT})\s*:\s*(?P<fa>{_IDENT})\s*\[(?P<side>[^\]]*)\]\s+"
        rf"(?P<cb>{_IDENT})\s*:\s*(?P<fb>{_IDENT}){_HEIGHT}$"
    ),
}
_IDENT_RE = re.compile(rf"{_IDENT}$")


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse the one-event-per-line presentation language.

    >>> len(parse_presentation("min c1 in f0 new f1\\nmax c1"))
    2
    """
    events = []
    heights = []
    defined = {INITIAL_FACE}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        column = len(line) - len(line.lstrip()) + 1
        keyword = stripped.split()[0]
        pattern = _PATTERNS.get(keyword)
        if pattern is None:
            raise ParseError(f"unknown event keyword {keyword!r}", lineno, column)
        m = pattern.match(stripped)
        if m is None:
            raise ParseError(f"malformed {keyword} event", lineno, column)
        g = m.groupdict()
        if keyword == "min":
            event = Birth(g["c"], g["host"], g["f"])
        elif keyword == "max":
            event = Death(g["c"])
        elif keyword == "merge":
            if g["a"] == g["b"]:
                raise ParseError(f"merge of circle {g['a']!r} with itself", lineno, column)
            event = Merge(g["a"], g["b"], g["via"], g["c"])
        else:
            side = tuple(s for s in re.split(r"[\s,]+", g["side"].strip()) if s)
            for s in side:
                if not _IDENT_RE.match(s):
                    raise ParseError(f"bad identifier {s!r} in side list", lineno, column)
            event = Split(g["c"], g["via"], g["ca"], g["fa"], side, g["cb"], g["fb"])
        for ref in _referenced(event):
            if ref not in defined:
                raise ParseError(f"unknown identifier {ref!r}", lineno, column)
        intro = _introduced(event)
        if len(set(intro)) != len(intro):
            raise ParseError("event defines the same identifier twice", lineno, column)
        for new in intro:
            if new in defined:
                raise ParseError(f"redefinition of {new!r}", lineno, column)
        defined.update(intro)
        events.append(event)
        heights.append(None if g.get("height") is None else float(g["height"]))
    if not events:
        raise ParseError("empty presentation")
    given = [h for h in heights if h is not None]
    if given:
        if len(given) != len(heights):
            raise ParseError("heights must be given for every event or for none")
        for lo, hi in zip(given, given[1:]):
            if hi == lo:
                raise ParseError(f"two events share height {lo}: not in general position")
            if hi < lo:
                raise ParseError("heights must increase down the file")
    return Presentation(tuple(events), name, tuple(heights) if given else None)


def _event_text(event: MorseEvent) -> str:
    if isinstance(event, Birth):
        return f"min {event.circle} in {event.host} new {event.face}"
    if isinstance(event, Death):
        return f"max {event.circle}"
    if isinstance(event, Merge):
        return f"merge {event.circle_a} {event.circle_b} in {event.via} as {event.new_circle}"
    side = " ".join(event.side_a)
    return (
        f"split {event.circle} thru {event.via} as "
        f"{event.new_circle_a}:{event.new_face_a}[{side}] {event.new_circle_b}:{event.new_face_b}"
    )


def to_text(p: Presentation) -> str:
    lines = [f"# {p.name}"] if p.name else []
    lines.extend(_event_text(e) for e in p.events)
    return "\n".join(lines) + "\n"


# -- height reflection --------------------------------------------------------


def reflect(p: Presentation) -> Presentation:
    """Turn a presentation upside down.

    Births become deaths, merges become splits and vice versa.  Fresh names
    are issued for everything the reflected word introduces.
    """
    trace = simulate(p)
    counters = {"c": 0, "f": 0}

    def fresh(kind: str) -> str:
        counters[kind] += 1
        return f"{kind}{counters[kind]}"

    top = trace.states[-1]
    rename = {top.faces[0]: INITIAL_FACE}
    out = []
    for k in range(len(trace), 0, -1):
        event = trace.event(k)
        below = trace.states[k - 1]
        if isinstance(event, Death):
            dead = dying_face(below, event.circle)
            other = below.far(event.circle, dead)
            c, f = fresh("c"), fresh("f")
            out.append(Birth(c, rename[other], f))
            rename[event.circle] = c
            rename[dead] = f
        elif isinstance(event, Birth):
            out.append(Death(rename.pop(event.circle)))
            rename.pop(event.face)
        elif isinstance(event, Merge):
            fa = below.far(event.circle_a, event.via)
            fb = below.far(event.circle_b, event.via)
            side_a = tuple(
                rename[c] for c in below.incident(fa) if c != event.circle_a
            )
            ca, cb, na, nb = fresh("c"), fresh("c"), fresh("f"), fresh("f")
            out.append(Split(rename[event.new_circle], rename[fa], ca, na, side_a, cb, nb))
            del rename[event.new_circle]
            rename.update({event.circle_a: ca, event.circle_b: cb, fa: na, fb: nb})
        else:
            far = below.far(event.circle, event.via)
            c = fresh("c")
            out.append(Merge(rename[event.new_circle_a], rename[event.new_circle_b], rename[far], c))
            fused = rename.pop(event.new_face_a)
            rename.pop(event.new_face_b)
            del rename[event.new_circle_a], rename[event.new_circle_b]
            rename[event.via] = fused
            rename[event.circle] = c
    name = f"{p.name}-reflected" if p.name else "reflected"
    return Presentation(tuple(out), name)


# -- random legal words -------------------------------------------------------


def _legal_moves(state: LevelState, budget: int, fresh) -> list:
    """Candidate events that keep the word closable within ``budget`` events."""
    moves = []
    n_circles = len(state.circles)
    # closing needs one death per circle; every move costs one event
    if budget >= n_circles + 2:
        for f in state.faces:
            moves.append(("birth", f))
        for c, (f, g) in state.circles.items():
            for via in (f, g):
                moves.append(("split", c, via))
    if budget >= n_circles:
        for face in state.faces:
            inc = state.incident(face)
            for i in range(len(inc)):
                for j in range(i + 1, len(inc)):
                    moves.append(("merge", inc[i], inc[j], face))
    if budget >= n_circles and n_circles:
        for c in state.circles:
            try:
                dying_face(state, c)
            except SimulationError:
                continue
            moves.append(("death", c))
    return moves


def random_presentation(rng: random.Random, max_events: int = 30, name: str = "") -> Presentation:
    """A uniformly-built random legal presentation with at most ``max_events`` events."""
    if max_events < 2:
        raise ValueError("a presentation needs at least two events")
    counters = {"c": 0, "f": 0}

    def fresh(kind: str) -> str:
        counters[kind] += 1
        return f"{kind}{counters[kind]}"

    state = LevelState.empty()
    events: list = []
    stop_after = rng.randint(2, max_events)
    while True:
        budget = max_events - len(events)
        if not state.circles and events and (len(events) >= stop_after or budget < 2):
            break
        if len(events) >= stop_after and state.circles:
            choices = [("death", c) for c in state.circles if _can_die(state, c)]
        else:
            choices = _legal_moves(state, budget, fresh)
        move = rng.choice(choices)
        if move[0] == "birth":
            event = Birth(fresh("c"), move[1], fresh("f"))
        elif move[0] == "death":
            event = Death(move[1])
        elif move[0] == "merge":
            event = Merge(move[1], move[2], move[3], fresh("c"))
        else:
            c, via = move[1], move[2]
            others = [x for x in state.incident(via) if x != c]
            side_a = tuple(x for x in others if rng.random() < 0.5)
            event = Split(c, via, fresh("c"), fresh("f"), side_a, fresh("c"), fresh("f"))
        state, _ = apply_event(state, event)
        events.append(event)
    return Presentation(tuple(events), name)


def _can_die(state: LevelState, circle: str) -> bool:
    try:
        dying_face(state, circle)
    except SimulationError:
        return False
    return True


def random_presentations(seed: int, count: int, max_events: int = 30) -> Iterator[Presentation]:
    """Seeded stream; case ``i`` depends only on ``(seed, i)``."""
    for i in range(count):
        yield random_presentation(random.Random(seed * 1_000_003 + i), max_events, name=f"random-{seed}-{i}")


def iter_states(trace: Trace) -> Iterable[LevelState]:
    return iter(trace.states)


def split_sides(state: LevelState, event: Split) -> tuple[list[str], list[str]]:
    others = [c for c in state.incident(event.via) if c != event.circle]
    return [c for c in others if c in event.side_a], [c for c in others if c not in event.side_a]


def event_text(event: MorseEvent) -> str:
    return _event_text(event)


def ordinals(trace: Trace) -> Sequence[int]:
    return range(1, len(trace) + 1)
