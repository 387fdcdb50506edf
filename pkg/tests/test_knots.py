import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planpres import _pykernels, kernels
from planpres.knots import (
    WordError,
    catalan,
    enumerate_words,
    parse_word,
    reflect_word,
    stack,
    thick_thin,
    valid_prefixes,
    width,
    width_formula,
)

THREE_THICK_LEVELS = "mmmmmMMMmmMMmmMMMM"


def test_small_example():
    w = parse_word("mmMmMM")
    assert width(w) == 14
    d = thick_thin(w)
    assert (list(d.thick), list(d.thin)) == ([2, 2], [1])
    assert width_formula(d) == 14


def test_eighteen_event_word():
    w = parse_word(THREE_THICK_LEVELS)
    d = thick_thin(w)
    assert len(w.events) == 18
    assert width(w) == 98
    assert list(d.thick) == [5, 4, 4]
    assert list(d.thin) == [2, 2]
    assert width_formula(d) == 98


@pytest.mark.parametrize("bad", ["", "mM M", "Mm", "mmM", "mMmM", "mxM"])
def test_invalid_words(bad):
    with pytest.raises(WordError):
        parse_word(bad)


@pytest.mark.parametrize("n", range(2, 17, 2))
def test_catalan_counts(n):
    words = list(enumerate_words(n))
    assert len(words) == catalan(n // 2 - 1)
    assert len({w.events for w in words}) == len(words)


def test_prefix_partition_is_exact():
    whole = sorted(w.events for w in enumerate_words(14))
    parts = sorted(w.events for p in valid_prefixes(14, 5) for w in enumerate_words(14, p))
    assert whole == parts


@pytest.mark.parametrize("n", range(2, 15, 2))
def test_formula_and_shape(n):
    for w in enumerate_words(n):
        d = thick_thin(w)
        assert width(w) == width_formula(d)
        assert width(w) % 2 == 0
        assert len(d.thick) == len(d.thin) + 1
        assert width(w) >= 2 * max(d.thick)


def test_stacking_small():
    words = [w for n in range(2, 9, 2) for w in enumerate_words(n)]
    for a, b in itertools.product(words, repeat=2):
        assert width(stack(a, b)) == width(a) + width(b) - 2


def test_reflection_preserves_width():
    for w in enumerate_words(12):
        assert width(reflect_word(w)) == width(w)


@given(st.sampled_from([w.events for w in enumerate_words(14)]))
def test_backends_agree(word):
    assert kernels.word_width(word) == _pykernels.word_width(word)
    assert tuple(map(tuple, kernels.thick_thin(word))) == tuple(map(tuple, _pykernels.thick_thin(word)))
    assert kernels.dot_profile(word) == _pykernels.dot_profile(word)
