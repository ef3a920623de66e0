from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from braidforge.braid import BraidWord, closure_info
from braidforge.hypothetical import hypothetical_H
from braidforge.perturb import MAX_ORDER, expand, npoly_str, vanishing_order
from braidforge.qpoly import BiLaurent
from braidforge.rtrep import homfly_char, jones_direct

from conftest import A, Q, braid_words, to_sympy

h, N = sp.symbols("hbar N")


def _sympy_series(H, order):
    expr = to_sympy(H).subs({Q: sp.exp(h / 2), A: sp.exp(N * h / 2)})
    ser = sp.series(expr, h, 0, order + 1).removeO()
    return [sp.expand(ser.coeff(h, n)) for n in range(order + 1)]


def _as_sympy(p):
    return sum((sp.Rational(c.numerator, c.denominator) * N ** d for d, c in enumerate(p)), sp.Integer(0))


def test_unknot_and_trefoil():
    s = expand(BiLaurent.const(1), 5)
    assert s.is_zero_beyond_constant() and vanishing_order(s) == math.inf
    tref = expand(homfly_char(BraidWord(2, (1, 1, 1))), 4)
    assert vanishing_order(tref) == 2
    assert not tref.coeffs[1]


@pytest.mark.parametrize("word", [(1, 1, 1), (1, -2, 1, -2), (1, 1, 1, 1, 1, 2)])
def test_matches_sympy_series(word):
    w = BraidWord(max(map(abs, word)) + 1, word)
    H = homfly_char(w)
    s = expand(H, 5)
    for n, ref in enumerate(_sympy_series(H, 5)):
        assert sp.expand(_as_sympy(s.coeff(n)) - ref) == 0


@settings(max_examples=25, deadline=None)
@given(braid_words(3, min_len=1, max_len=7))
def test_n2_matches_jones_series(w):
    if not closure_info(w).is_knot:
        return
    s = expand(homfly_char(w), 4).at_N(2)
    j = expand(jones_direct(w), 4)
    assert s == [p[0] if p else Fraction(0) for p in j.coeffs]


@settings(max_examples=25, deadline=None)
@given(braid_words(4, min_len=1, max_len=7))
def test_first_order_vanishes_for_knots(w):
    if not closure_info(w).is_knot:
        return
    s = expand(homfly_char(w), 2)
    assert s.coeffs[0] == (1,) and not s.coeffs[1]


@pytest.mark.parametrize("m", range(0, 4))
def test_hypothetical_series(m):
    s = expand(hypothetical_H(m).H, 5)
    assert vanishing_order(s) == 4
    scale = -Fraction((m + 1) * (m + 2) * (m + 3) * (m + 4), 24)
    assert s.coeff(4) == tuple(scale * c for c in (4, 0, -5, 0, 1))


def test_vassiliev_coefficients_polynomial_in_m():
    order = 6
    series = [expand(hypothetical_H(m).H, order) for m in range(9)]
    for n in range(order + 1):
        for N_val in (0, 1, 3):
            vals = [s.at_N(N_val)[n] for s in series]
            # finite differences of order n+1 vanish for a degree <= n polynomial
            for _ in range(n + 1):
                vals = [b - a for a, b in zip(vals, vals[1:])]
            assert all(v == 0 for v in vals), (n, N_val)


def test_guards():
    with pytest.raises(ValueError):
        expand(BiLaurent.const(1), MAX_ORDER + 1)
    with pytest.raises(ValueError):
        expand(BiLaurent.const(1), -1)
    with pytest.raises(ValueError):
        expand(BiLaurent.const(1), 2).coeff(3)
    with pytest.raises(ValueError):
        vanishing_order(expand(BiLaurent.const(2), 2))


def test_npoly_str():
    assert npoly_str(()) == "0"
    assert npoly_str((Fraction(4), 0, Fraction(-5), 0, Fraction(1))) == "4 - 5*N^2 + N^4"
    assert npoly_str((0, Fraction(-1))) == "-N"
