from __future__ import annotations

import itertools

import pytest
import sympy as sp
from hypothesis import given, settings

from braidforge.braid import BraidWord, closure_info
from braidforge.burau import (NotAKnotError, alexander, alexander_via_rmatrix, burau_rep, burau_reduced,
                              burau_unreduced, normalize_unit)
from braidforge.matrix import QMatrix
from braidforge.qpoly import LaurentPoly

from conftest import Q, braid_words, to_sympy

q = LaurentPoly.q
ONE, ZERO = LaurentPoly.const(1), LaurentPoly()


def test_unreduced_generator():
    assert burau_unreduced(1, 2) == QMatrix.from_rows([[1 - q(2), q(2)], [ONE, ZERO]])
    g = burau_unreduced(2, 4)
    assert g[1, 1] == 1 - q(2) and g[1, 2] == q(2) and g[2, 1] == 1 and g[0, 0] == 1 and g[3, 3] == 1


def test_reduced_generators():
    assert burau_reduced(1, 2) == QMatrix.from_rows([[-q(2)]])
    b1 = burau_reduced(1, 4)
    assert [[b1[i, j] for j in range(2)] for i in range(2)] == [[-q(2), ONE], [ZERO, ONE]]
    b2 = burau_reduced(2, 4)
    assert (b2[1, 0], b2[1, 1], b2[1, 2]) == (q(2), -q(2), ONE)


@pytest.mark.parametrize("reduced", [True, False])
@pytest.mark.parametrize("n", range(3, 7))
def test_braid_relations(n, reduced):
    gen = burau_reduced if reduced else burau_unreduced
    G = [gen(i, n) for i in range(1, n)]
    for i in range(n - 2):
        assert G[i] @ G[i + 1] @ G[i] == G[i + 1] @ G[i] @ G[i + 1]
    for i, j in itertools.combinations(range(n - 1), 2):
        if j - i >= 2:
            assert G[i] @ G[j] == G[j] @ G[i]


def test_rep_examples():
    assert burau_rep(BraidWord(3)) == QMatrix.identity(2)
    assert burau_rep(BraidWord(3, (1, -1))) == QMatrix.identity(2)
    assert burau_rep(BraidWord(3, (1, 2, 1))) == burau_rep(BraidWord(3, (2, 1, 2)))


def test_alexander_examples():
    assert alexander(BraidWord(2, (1,))) == 1
    assert alexander(BraidWord(2, (1, 1, 1))) == q(2) - 1 + q(-2)
    # figure-eight: -t + 3 - 1/t with t = q^2
    assert alexander(BraidWord(3, (1, -2, 1, -2))) == -q(2) + 3 - q(-2)
    with pytest.raises(NotAKnotError) as err:
        alexander(BraidWord(2, (1, 1)))
    assert err.value.components == 2


def test_alexander_against_sympy_determinant():
    # independent oracle: reduced Burau in sympy, det(1 - B) / (1 + t + t^2)
    t = sp.Symbol("t")
    b1 = sp.Matrix([[-t, 1], [0, 1]])
    b2 = sp.Matrix([[1, 0], [t, -t]])
    M = sp.eye(2)
    for g in (1, -2, 1, -2):
        m = b1 if abs(g) == 1 else b2
        M = M * (m if g > 0 else m.inv())
    val = sp.cancel((sp.eye(2) - M).det() / (1 + t + t ** 2))
    ours = to_sympy(alexander(BraidWord(3, (1, -2, 1, -2)))).subs(Q, sp.sqrt(t))
    ratio = sp.cancel(val / ours)
    # the two agree up to a unit +-t^k
    num, den = sp.fraction(ratio)
    assert len(sp.Poly(num, t).terms()) == 1 and len(sp.Poly(den, t).terms()) == 1


def test_alexander_via_rmatrix_examples():
    assert alexander_via_rmatrix(BraidWord(3, (1, 2))) == 1
    assert alexander_via_rmatrix(BraidWord(3, (1, 1, 1, 2))) == alexander(BraidWord(2, (1, 1, 1)))
    assert alexander_via_rmatrix(BraidWord(4, (1, 2, 3))) == 1


def _knots(n, max_len):
    gens = [g for g in range(-(n - 1), n) if g]
    for L in range(1, max_len + 1):
        for w in itertools.product(gens, repeat=L):
            bw = BraidWord(n, w)
            if closure_info(bw).is_knot:
                yield bw


@pytest.mark.parametrize("n,max_len", [(3, 6), (4, 5)])
def test_two_alexander_routes_agree(n, max_len):
    for w in _knots(n, max_len):
        assert alexander(w) == alexander_via_rmatrix(w), w


@settings(max_examples=40, deadline=None)
@given(braid_words(4, min_len=1, max_len=7))
def test_alexander_invariant_under_rotation_and_insertion(w):
    if not closure_info(w).is_knot:
        return
    a = alexander(w)
    rot = BraidWord(4, w.letters[1:] + w.letters[:1])
    ins = BraidWord(4, w.letters[:1] + (2, -2) + w.letters[1:])
    assert alexander(rot) == a
    assert alexander(ins) == a


def test_normalize_unit():
    p = q(2) - 1 + q(-2)
    assert normalize_unit(-p.shift(8)) == p
    with pytest.raises(ValueError):
        normalize_unit(LaurentPoly())
    with pytest.raises(ValueError):
        normalize_unit(1 + q(2) + q(6))
