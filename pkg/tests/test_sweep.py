import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planpres.sweep import (
    ParseError,
    SimulationError,
    parse_presentation,
    random_presentation,
    reflect,
    simulate,
    to_text,
)

from support import load


@pytest.mark.parametrize(
    "name, census, cuts, classes",
    [
        ("ball", (1,), (1, 2), ["external min", "external max"]),
        ("donut_flat", (1, 1, 1), (1, 4), ["external min", "nested lower saddle", "nested upper saddle", "external max"]),
        ("donut_vertical", (1, 2, 1), (1, 2, 3, 4), ["external min", "unnested lower saddle", "unnested upper saddle", "external max"]),
        ("two_balls", (1, 2, 1), (1, 2, 3, 4), ["external min", "external min", "unnested upper saddle", "external max"]),
    ],
)
def test_fixture_classification(name, census, cuts, classes):
    trace = simulate(load(name))
    assert trace.census == census
    assert trace.cut_ordinals == cuts
    assert [str(c) for c in trace.classes] == classes


def test_states_start_and_end_empty(fixture_trace):
    assert fixture_trace.states[0].is_empty
    assert fixture_trace.states[-1].is_empty


def test_round_trip_text(fixture_trace):
    p = fixture_trace.presentation
    assert parse_presentation(to_text(p), p.name).events == p.events


@pytest.mark.parametrize(
    "text, line",
    [
        ("min c1 in f0\n", 1),
        ("min c1 in f0 new f1\nfrobnicate c1\n", 2),
        ("min c1 in f9 new f1\n", 1),
        ("min c1 in f0 new f1\nmin c1 in f0 new f2\n", 2),
    ],
)
def test_parse_errors_carry_position(text, line):
    with pytest.raises(ParseError) as err:
        parse_presentation(text)
    assert err.value.line == line


@pytest.mark.parametrize(
    "text",
    [
        "min c1 in f0 new f1\nmin c2 in f0 new f2\nmerge c1 c2 in f1 as c3\n",
        "min c1 in f0 new f1\nmax c1\nmax c1\n",
        "min c1 in f0 new f1\n",
    ],
)
def test_illegal_events_fail_simulation(text):
    with pytest.raises(SimulationError):
        simulate(parse_presentation(text))


def _saddle_rule_holds(trace) -> bool:
    """At every saddle the nesting label matches the change in the number of
    in-M faces: unnested saddles change it by one, nested ones do not."""
    for k, _, before, after, cls in trace.steps():
        if cls.is_saddle:
            diff = abs(len(after.in_faces) - len(before.in_faces))
            if diff != (cls.nesting == "unnested"):
                return False
    return True


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_random_presentations_keep_invariants(seed):
    trace = simulate(random_presentation(random.Random(seed), 30))
    assert all(not s.violations() for s in trace.states)
    assert _saddle_rule_holds(trace)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_reflection_swaps_polarity(seed):
    p = random_presentation(random.Random(seed), 30)
    t1, t2 = simulate(p), simulate(reflect(p))
    n = len(t1)
    assert n == len(t2)
    for k in range(1, n + 1):
        a, b = t1.cls(k), t2.cls(n + 1 - k)
        assert a.polarity == {"min": "max", "max": "min", "saddle": "saddle"}[b.polarity]
        if a.is_saddle:
            assert a.vertical != b.vertical
            assert a.nesting == b.nesting
        else:
            assert a.locality == b.locality


def test_random_presentation_is_seeded():
    a = random_presentation(random.Random(7), 30)
    b = random_presentation(random.Random(7), 30)
    assert a.events == b.events
