"""Width of a knot presented by its sequence of minima and maxima.

A word over ``m`` (minimum) and ``M`` (maximum) lists the critical points of
the height function on a knot from the bottom up.  Between consecutive
critical points the level sphere meets the knot in ``2 * dots`` points, where
``dots`` counts strand pairs (minima so far minus maxima so far).

Thick and thin levels are measured in dots, not intersection points.  With
that convention ``2 * sum(thick**2) - 2 * sum(thin**2)`` reproduces the width
exactly; with raw intersection counts it would be off by a factor of four.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from . import kernels

__all__ = [
    "WordError",
    "KnotWord",
    "ThickThin",
    "parse_word",
    "width",
    "thick_thin",
    "width_formula",
    "stack",
    "reflect_word",
    "enumerate_words",
    "catalan",
]


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class KnotWord:
    events: str

    def __post_init__(self):
        _validate(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return self.events

    def dots(self) -> list[int]:
        """``dots()[i-1]`` is the number of strand pairs just above event ``i``."""
        return kernels.dot_profile(self.events)

    def intersections(self) -> list[int]:
        """Points of the knot on each regular level, bottom to top."""
        return [2 * d for d in self.dots()[:-1]]


@dataclass(frozen=True)
class ThickThin:
    thick: tuple[int, ...]
    thin: tuple[int, ...]


def _validate(events: str) -> None:
    if not events:
        raise WordError("empty word")
    bad = set(events) - {"m", "M"}
    if bad:
        raise WordError(f"bad character(s) {''.join(sorted(bad))!r}; use m and M")
    profile = kernels.dot_profile(events)
    for i, d in enumerate(profile[:-1], 1):
        if d < 1:
            raise WordError(f"no strands left after event {i}; the level would be empty mid-word")
    if profile[-1] != 0:
        raise WordError(f"word ends with {profile[-1]} unmatched minima")


def parse_word(text: str) -> KnotWord:
    """Read a word, ignoring whitespace.

    >>> width(parse_word("mm MM"))
    8
    """
    return KnotWord("".join(text.split()))


def width(w: KnotWord) -> int:
    return kernels.word_width(w.events)


def thick_thin(w: KnotWord) -> ThickThin:
    thick, thin = kernels.thick_thin(w.events)
    return ThickThin(tuple(thick), tuple(thin))


def width_formula(d: ThickThin) -> int:
    return kernels.formula_width(d.thick, d.thin)


def stack(w1: KnotWord, w2: KnotWord) -> KnotWord:
    """Stack ``w2`` above ``w1``: the top maximum of ``w1`` and the bottom
    minimum of ``w2`` cancel, giving a word for the connected sum."""
    return KnotWord(w1.events[:-1] + w2.events[1:])


def reflect_word(w: KnotWord) -> KnotWord:
    flip = {"m": "M", "M": "m"}
    return KnotWord("".join(flip[c] for c in reversed(w.events)))


def catalan(k: int) -> int:
    c = 1
    for i in range(k):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def enumerate_words(n: int, prefix: str = "") -> Iterator[KnotWord]:
    """All valid words with ``n`` events, each once, ``m`` sorting before ``M``.

    With ``prefix`` only the words starting with it are produced, in the same
    order; used to split the stream between workers.
    """
    if n < 2 or n % 2:
        raise WordError(f"word length must be even and at least 2, got {n}")
    half = n // 2
    buf = list(prefix)
    mins = prefix.count("m")
    maxs = prefix.count("M")

    def rec(mins: int, maxs: int) -> Iterator[str]:
        pos = mins + maxs
        if pos == n:
            yield "".join(buf)
            return
        if mins < half:
            buf.append("m")
            yield from rec(mins + 1, maxs)
            buf.pop()
        # a max may not empty the level before the last event
        if maxs < mins and (mins - maxs > 1 or pos == n - 1):
            buf.append("M")
            yield from rec(mins, maxs + 1)
            buf.pop()

    if prefix:
        if set(prefix) - {"m", "M"} or len(prefix) > n or mins > half:
            return
        profile = kernels.dot_profile(prefix)
        if any(d < 1 for d in profile[: n - 1]) or min(profile) < 0:
            return
    for s in rec(mins, maxs):
        yield KnotWord(s)


def valid_prefixes(n: int, length: int) -> list[str]:
    """Prefixes of valid ``n``-event words, in enumeration order."""
    out = []
    for combo in product("mM", repeat=length):
        p = "".join(combo)
        profile = kernels.dot_profile(p)
        if all(d >= 1 for d in profile[: min(length, n - 1)]) and p.count("m") <= n // 2:
            if length <= n and next(enumerate_words(n, p), None) is not None:
                out.append(p)
    return out


def report(w: KnotWord) -> dict:
    d = thick_thin(w)
    wd = width(w)
    f = width_formula(d)
    return {
        "word": w.events,
        "width": wd,
        "thick": list(d.thick),
        "thin": list(d.thin),
        "formula": f,
        "agree": wd == f,
    }
