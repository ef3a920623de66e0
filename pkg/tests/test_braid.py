from __future__ import annotations

import pytest
from hypothesis import given, settings

from braidforge.braid import (BraidParseError, BraidWord, box_word, canonical_cyclic, closure_info, compose,
                              delta, parse_braid, power, project_sigma3_to_sigma1, writhe)

from conftest import braid_words


def test_parse_tuple_notation():
    assert parse_braid("(3,0,3;0,-1,0)", 4).letters == (1, 1, 1, 3, 3, 3, -2)
    assert parse_braid("(6,-1)", 3).letters == (1,) * 6 + (-2,)
    assert parse_braid("1", 2).letters == (1,)
    assert parse_braid("1 -2  1", 3).letters == (1, -2, 1)


@pytest.mark.parametrize("text,n", [("1,x", 3), ("(1,2", 3), ("3", 3), ("0", 2)])
def test_parse_errors(text, n):
    with pytest.raises(BraidParseError):
        parse_braid(text, n)


def test_writhe_and_delta():
    assert writhe(BraidWord(4, (1, 1, 1, 3, 3, 3, -2))) == 5
    assert writhe(BraidWord(3)) == 0
    assert delta(4).letters == (1, 2, 3, 1, 2, 1)
    assert writhe(delta(4)) == 6
    assert writhe(power(delta(4), 2)) == 12
    assert power(BraidWord(2, (1,)), -1).letters == (-1,)


def test_closure_examples():
    assert closure_info(BraidWord(3)).components == 3
    assert closure_info(parse_braid("(6,-1)", 3)).components == 2
    assert closure_info(BraidWord(4, (1, 2, 3))).is_knot


@pytest.mark.parametrize("n", range(2, 7))
def test_delta_permutation(n):
    assert delta(n).permutation() == tuple(reversed(range(n)))
    assert power(delta(n), 2).permutation() == tuple(range(n))


def test_projection():
    assert project_sigma3_to_sigma1(BraidWord(4, (1, 1, 1, 3, 3, 3, -2))).letters == (1,) * 6 + (-2,)
    w = project_sigma3_to_sigma1(BraidWord(4, (1, -2)))
    assert w.strands == 3 and w.letters == (1, -2)
    assert project_sigma3_to_sigma1(BraidWord(4, (3,))).letters == (1,)
    with pytest.raises(ValueError):
        project_sigma3_to_sigma1(BraidWord(3, (1,)))


def test_canonical_cyclic_examples():
    assert canonical_cyclic(BraidWord(3, (2, 1, 1))).letters == (1, 1, 2)
    assert canonical_cyclic(BraidWord(2, (1, 1, 1))).letters == (1, 1, 1)
    assert canonical_cyclic(BraidWord(4, (3, 1, 2))).letters == (1, 2, 3)


def test_compose_strand_mismatch():
    with pytest.raises(ValueError):
        compose(BraidWord(3, (1,)), BraidWord(4, (1,)))


def test_box_word():
    assert box_word((-1, 1, 2, 3)).letters == (-1, 2, 1, 1, 2, 2, 2)


@settings(max_examples=80, deadline=None)
@given(braid_words(5, max_len=10))
def test_full_twist_keeps_components(w):
    twisted = compose(w, power(delta(5), 2))
    assert closure_info(twisted).components == closure_info(w).components


@settings(max_examples=80, deadline=None)
@given(braid_words(4, max_len=8), braid_words(4, max_len=8))
def test_writhe_additive(a, b):
    assert writhe(compose(a, b)) == writhe(a) + writhe(b)


@settings(max_examples=80, deadline=None)
@given(braid_words(4, min_len=1, max_len=9))
def test_canonical_cyclic_idempotent_and_rotation_invariant(w):
    c = canonical_cyclic(w)
    assert canonical_cyclic(c) == c
    rot = BraidWord(w.strands, w.letters[1:] + w.letters[:1])
    assert canonical_cyclic(rot) == c


def test_json_roundtrip():
    w = BraidWord(4, (1, -3, 2))
    assert BraidWord.from_json(w.to_json()) == w
