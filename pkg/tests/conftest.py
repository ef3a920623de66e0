from __future__ import annotations

import sympy as sp
from hypothesis import strategies as st

from braidforge.braid import BraidWord
from braidforge.qpoly import BiLaurent, LaurentPoly, RationalFn

Q, A = sp.symbols("q A")


def to_sympy(p):
    """Independent oracle representation (whole-unit exponents only)."""
    if isinstance(p, RationalFn):
        return to_sympy(p.num) / to_sympy(p.den)
    if isinstance(p, LaurentPoly):
        return sum((c * Q ** sp.Rational(e, 2) for e, c in p.terms.items()), sp.Integer(0))
    return sum((c * Q ** sp.Rational(eq, 2) * A ** sp.Rational(ea, 2) for (eq, ea), c in p.terms.items()),
               sp.Integer(0))


def sp_equal(x, y) -> bool:
    return sp.simplify(sp.together(x - y)) == 0


small_coeff = st.integers(-6, 6)
laurent_polys = st.dictionaries(st.integers(-6, 6).map(lambda e: 2 * e), small_coeff, max_size=5).map(LaurentPoly)
bilaurent_polys = st.dictionaries(
    st.tuples(st.integers(-4, 4).map(lambda e: 2 * e), st.integers(-3, 3).map(lambda e: 2 * e)),
    small_coeff, max_size=4).map(BiLaurent)


def braid_words(strands: int, min_len: int = 0, max_len: int = 8, positive: bool = False):
    gens = [g for g in range(1, strands)]
    if not positive:
        gens += [-g for g in gens]
    return st.lists(st.sampled_from(gens), min_size=min_len, max_size=max_len).map(
        lambda ls: BraidWord(strands, tuple(ls)))
