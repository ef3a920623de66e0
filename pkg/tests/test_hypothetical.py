from __future__ import annotations

import cmath
import random

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from braidforge.braid import BraidWord, closure_info, compose, delta, parse_braid, power
from braidforge.hypothetical import (FOUR_STRAND, NEGATIVE, POSITIVE, Y22, Y31, Y211, DivisorSet,
                                     acoef_solve, cycf_closed_form, diff_extract, general_family,
                                     homfly_from_coeffs, hypothetical_H, mfw_check, odd_power_H, phi_solve,
                                     power_sums, recurrence_residuals, resolve_a22, sector_elementary, twist_H)
from braidforge.qpoly import BiLaurent, LaurentPoly, NonDivisibleError, RationalFn, a_span, quantum_int
from braidforge.rtrep import char_coeffs, homfly_char, sector_matrix

from conftest import A, Q, braid_words, to_sympy

q = LaurentPoly.q


def test_divisor_coefficients_against_sympy():
    prod = sp.expand(sp.prod([A ** 2 - Q ** (2 * k) for k in (1, 2, -1, -2)]))
    coeffs = FOUR_STRAND.coefficients()
    for i, C in enumerate(coeffs):
        assert sp.expand(to_sympy(C) - prod.coeff(A, 2 * i)) == 0
    # middle coefficient carries a constant 2
    assert coeffs[2] == q(6) + q(2) + 2 + q(-2) + q(-6)
    assert sp.expand(to_sympy(FOUR_STRAND.product()) - prod) == 0


def test_divisor_set_rejects_repeats():
    with pytest.raises(ValueError):
        DivisorSet((1, 1))


@pytest.mark.parametrize("m", range(0, 21))
def test_phi_matches_closed_form(m):
    s = phi_solve(FOUR_STRAND, NEGATIVE, m)
    assert s.phi == cycf_closed_form(m)
    assert all(r.is_zero() for r in recurrence_residuals(s))


def test_phi_examples():
    s = phi_solve(FOUR_STRAND, NEGATIVE, 1)
    assert s.phi[0] == -1
    # -[6][4][2] / ([3][4]) = -[6][2]/[3]
    assert s.phi[1] == -(quantum_int(6) * quantum_int(2)).exact_div(quantum_int(3))


def test_hp_polynomial():
    H = hypothetical_H(0).H
    D4 = q(4) + q(2) + q(-2) + q(-4)
    C4 = q(6) + q(2) + 2 + q(-2) + q(-6)
    expected = (BiLaurent.from_laurent(D4) * BiLaurent.A(-2) - BiLaurent.from_laurent(C4) * BiLaurent.A(-4)
                + BiLaurent.from_laurent(D4) * BiLaurent.A(-6) - BiLaurent.A(-8))
    assert H == expected
    assert len(H.terms) == 14


@pytest.mark.parametrize("m", range(0, 6))
def test_hypothetical_properties(m):
    h = hypothetical_H(m)
    assert h.W == 2 * m + 5
    assert h.H.subs_A_qpow(2) == 1
    assert h.H.subs_A_qpow(1) == 1 and h.H.subs_A_qpow(-1) == 1
    assert h.H.invert_q() == h.H
    assert a_span(h.H) <= 6 and mfw_check(h.H, 4)
    # non-trivial Alexander specialization, so the candidate is not the unknot
    assert h.H.subs_A_qpow(0) != 1
    assert diff_extract(h.H, FOUR_STRAND) == h.F


@pytest.mark.parametrize("m", range(0, 4))
def test_positive_family_is_mirror(m):
    neg, pos = hypothetical_H(m, NEGATIVE), hypothetical_H(m, POSITIVE)
    assert pos.H == neg.H.invert_A()
    assert pos.W == -neg.W


def test_phi_solve_errors():
    with pytest.raises(ValueError):
        phi_solve(FOUR_STRAND, NEGATIVE, -1)
    with pytest.raises(ValueError):
        phi_solve(FOUR_STRAND, "sideways", 0)


def test_diff_extract_examples():
    trefoil = homfly_char(BraidWord(2, (1, 1, 1)))
    two = DivisorSet((1, -1))
    assert diff_extract(trefoil, two) * two.product() + 1 == trefoil
    with pytest.raises(NonDivisibleError):
        diff_extract(trefoil, FOUR_STRAND)
    assert diff_extract(BiLaurent.const(1), FOUR_STRAND) == 0


@settings(max_examples=30, deadline=None)
@given(braid_words(4, min_len=1, max_len=8))
def test_every_knot_has_gl1_divisors(w):
    if not closure_info(w).is_knot:
        return
    two = DivisorSet((1, -1))
    H = homfly_char(w)
    assert diff_extract(H, two) * two.product() + 1 == H


def test_mfw_examples():
    assert mfw_check(homfly_char(BraidWord(2, (1, 1, 1))), 2)
    assert not mfw_check(hypothetical_H(0).H, 3)


@pytest.mark.parametrize("b", range(3, 7))
def test_general_family_flags(b):
    rep = general_family(b).to_json()
    byname = {r["reading"]: r for r in rep["readings"]}
    assert not byname["literal"]["admits_solution"]
    assert not byname["literal"]["literal_matches_solver"]
    inf = byname["inferred"]
    assert inf["admits_solution"] and inf["solver_meets_bound"]
    assert inf["shifted_matches_solver"]


def test_general_family_rejects_small_index():
    with pytest.raises(ValueError):
        general_family(1)


# -- a-coefficients -----------------------------------------------------------------


def test_acoef_from_six_minus_one_reproduces_hp():
    c = acoef_solve(0, parse_braid("(6,-1)", 3))
    assert homfly_from_coeffs(c) == hypothetical_H(0).H
    assert c[Y22] == resolve_a22(BraidWord(4, (1,) * 6 + (-2,)))


@pytest.mark.parametrize("m", range(0, 4))
def test_acoef_integral_for_shifted_braid(m):
    c = acoef_solve(m, parse_braid(f"({2 * m + 6},-1)", 3))
    assert all(RationalFn.coerce(v).is_polynomial() for v in c.a.values())
    assert homfly_from_coeffs(c) == hypothetical_H(m).H


odd_laurent = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(
    lambda cs: LaurentPoly({k: v for i, c in enumerate(cs) for k, v in ((2 * (2 * i + 1), c), (-2 * (2 * i + 1), -c))}))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), odd_laurent)
def test_acoef_reproduces_family_for_any_odd_a22(m, a22):
    assert homfly_from_coeffs(acoef_solve(m, a22)) == hypothetical_H(m).H


def test_acoef_rejects_negative_m():
    with pytest.raises(ValueError):
        acoef_solve(-1, 0)


# -- related braids -------------------------------------------------------------------

SAMPLE = BraidWord(4, (1, 2, 3, -1, 2, 3, 1))


def test_twist_matches_direct_braid():
    c = char_coeffs(SAMPLE)
    for n in (1, -1):
        assert twist_H(c, n) == homfly_char(compose(SAMPLE, power(delta(4), 2 * n)))


def test_odd_power_matches_direct_braid():
    c = char_coeffs(SAMPLE)
    assert odd_power_H(c, 0) == homfly_char(SAMPLE)
    assert odd_power_H(c, 1) == homfly_char(power(SAMPLE, 3))


def test_odd_power_errors():
    with pytest.raises(ValueError):
        odd_power_H(char_coeffs(BraidWord(4, (1, 2))), 1)
    with pytest.raises(ValueError):
        odd_power_H(char_coeffs(SAMPLE), -1)


def _numeric(M, q0):
    n = M.shape[0]
    return np.array([[RationalFn.coerce(M[i, j]).eval_complex(q0) for j in range(n)] for i in range(n)])


def test_sector_elementary_matches_numeric_eigenvalues():
    rng = random.Random(11)
    c = char_coeffs(SAMPLE)
    elem = sector_elementary(c)
    mats = {Y: sector_matrix(Y, SAMPLE) for Y in (Y31, Y211, Y22)}
    for _ in range(20):
        q0 = cmath.exp(1j * rng.uniform(0.1, 3.0)) * rng.uniform(0.8, 1.2)
        for Y, M in mats.items():
            ev = np.linalg.eigvals(_numeric(M, q0))
            poly = np.poly(ev)  # 1, -e1, e2, -e3
            for i, e in enumerate(elem[Y], start=1):
                assert abs((-1) ** i * poly[i] - e.eval_complex(q0)) < 1e-8 * (1 + abs(poly[i]))
            p5 = power_sums(elem[Y], 5)[-1].eval_complex(q0)
            assert abs(p5 - np.sum(ev ** 5)) < 1e-8 * (1 + abs(p5))


def test_power_sums_small():
    x = RationalFn(q(1))
    # roots q, 1: e1 = q + 1, e2 = q
    p = power_sums([x + 1, x], 3)
    assert p == [x + 1, x ** 2 + 1, x ** 3 + 1]
