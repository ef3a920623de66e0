from __future__ import annotations

import itertools

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from braidforge.braid import BraidWord, closure_info, compose
from braidforge.burau import NotAKnotError
from braidforge.qpoly import BiLaurent, LaurentPoly, RationalFn
from braidforge.rtrep import (SECTOR_DIMS, block_r, block_r_inverse, char_coeffs, homfly_char, jones_direct,
                              jones_direct_link, r_fund_sl2, sector_matrix, three_route_check)

from conftest import Q, braid_words, to_sympy

q = LaurentPoly.q
BLOCKS = [Y for Y, d in SECTOR_DIMS.items() if d > 1]


def _sym(M):
    n = M.shape[0]
    return sp.Matrix(n, n, lambda i, j: to_sympy(M[i, j]))


def test_fundamental_r_matrix():
    R = _sym(r_fund_sl2())
    h = sp.sqrt(Q)
    expected = sp.Matrix([[h, 0, 0, 0], [0, 0, 1 / h, 0], [0, 1 / h, h - h ** -3, 0], [0, 0, 0, h]])
    assert sp.simplify(R - expected) == sp.zeros(4)
    # minimal polynomial (R - q^(1/2)) (R + q^(-3/2)) = 0
    assert sp.simplify((R - h * sp.eye(4)) * (R + h ** -3 * sp.eye(4))) == sp.zeros(4)


def test_yang_baxter():
    R = _sym(r_fund_sl2())
    I2 = sp.eye(2)
    R12, R23 = sp.kronecker_product(R, I2), sp.kronecker_product(I2, R)
    assert sp.simplify(R12 * R23 * R12 - R23 * R12 * R23) == sp.zeros(8)


def test_jones_examples():
    assert jones_direct(BraidWord(2, (1,))) == 1
    assert jones_direct(BraidWord(3, (1, 2))) == 1
    # figure-eight is amphichiral, so its Jones value is convention independent
    assert jones_direct(BraidWord(3, (1, -2, 1, -2))) == q(4) - q(2) + 1 - q(-2) + q(-4)
    # the two trefoils are mirror images
    assert jones_direct(BraidWord(2, (1, 1, 1))) == jones_direct(BraidWord(2, (-1, -1, -1))).invert_q()
    assert jones_direct_link(BraidWord(1)) == q(1) + q(-1)
    with pytest.raises(NotAKnotError):
        jones_direct(BraidWord(2, (1, 1)))


def test_empty_word_gives_dimensions():
    c = char_coeffs(BraidWord(4))
    dims = {Y: v for Y, v in c.as_rational().items()}
    assert dims == {(4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3, (1, 1, 1, 1): 1}


def test_a22_of_six_minus_one():
    a = char_coeffs(BraidWord(3, (1,) * 6 + (-2,)))[(2, 1)]
    assert a == RationalFn((1 - q(2)) * (1 + q(4)) * (1 + q(8)), q(7))


@pytest.mark.parametrize("basis", ["rational", "integral"])
@pytest.mark.parametrize("Y", BLOCKS)
def test_block_laws(Y, basis):
    n = sum(Y)
    G = [block_r(Y, i, basis) for i in range(1, n)]
    for i in range(n - 2):
        assert G[i] @ G[i + 1] @ G[i] == G[i + 1] @ G[i] @ G[i + 1]
    for i, j in itertools.combinations(range(n - 1), 2):
        if j - i >= 2:
            assert G[i] @ G[j] == G[j] @ G[i]
    dim = G[0].shape[0]
    for i in range(1, n):
        prod = block_r(Y, i, basis) @ block_r_inverse(Y, i, basis)
        assert all(prod[r, c] == (1 if r == c else 0) for r in range(dim) for c in range(dim))


def test_block_errors():
    with pytest.raises(ValueError):
        block_r((5,), 1)
    with pytest.raises(ValueError):
        block_r((2, 1), 3)
    with pytest.raises(ValueError):
        sector_matrix((2, 1), BraidWord(4, (1,)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(BLOCKS).flatmap(lambda Y: st.tuples(st.just(Y), braid_words(sum(Y), max_len=7))))
def test_rational_and_integral_bases_agree_on_traces(args):
    Y, w = args
    a = RationalFn.coerce(sector_matrix(Y, w, "rational").trace())
    b = RationalFn.coerce(sector_matrix(Y, w, "integral").trace())
    assert a == b


@settings(max_examples=40, deadline=None)
@given(braid_words(4, min_len=1, max_len=7))
def test_homfly_q_symmetric_and_routes_agree(w):
    if not closure_info(w).is_knot:
        return
    H = homfly_char(w)
    assert H.invert_q() == H
    r = three_route_check(w)
    assert r["jones_ok"] and r["alexander_ok"]


@settings(max_examples=40, deadline=None)
@given(braid_words(3, max_len=6))
def test_markov_stabilization(w):
    if not closure_info(w).is_knot:
        return
    w4 = BraidWord(4, w.letters)
    H = homfly_char(w)
    assert homfly_char(compose(w4, BraidWord(4, (3,)))) == H
    assert homfly_char(compose(w4, BraidWord(4, (-3,)))) == H


@settings(max_examples=40, deadline=None)
@given(braid_words(3, max_len=5), braid_words(3, max_len=5), st.sampled_from([1, 2]))
def test_skein_relation(u, v, i):
    # A H(L+) - A^-1 H(L-) = (q - 1/q) H(L0)
    def H(mid):
        w = BraidWord(3, u.letters + mid + v.letters)
        return RationalFn.coerce(homfly_char(w, allow_link=True))

    lhs = RationalFn(BiLaurent.A(1)) * H((i,)) - RationalFn(BiLaurent.A(-1)) * H((-i,))
    assert lhs == RationalFn(BiLaurent.q(1) - BiLaurent.q(-1)) * H(())


def test_trefoil_homfly():
    H = homfly_char(BraidWord(2, (1, 1, 1)))
    assert H == BiLaurent({(4, -4): 1, (-4, -4): 1, (0, -8): -1})
    assert H.subs_A_qpow(2) == jones_direct(BraidWord(2, (1, 1, 1)))
