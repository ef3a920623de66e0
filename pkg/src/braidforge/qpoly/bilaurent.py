"""Bivariate Laurent polynomials in (q, A) with exact integer coefficients.

Keys are pairs ``(eq, eA)`` in half-units of q and A respectively.
"""

from __future__ import annotations

import cmath
from typing import Mapping

from .laurent import LaurentPoly, NonDivisibleError, _fmt_exp


class BiLaurent:
    """Exact Laurent polynomial in q and A; immutable after construction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms: dict[tuple[int, int], int] = (
            {k: c for k, c in terms.items() if c} if terms else {}
        )
        self._hash = None

    @classmethod
    def const(cls, c: int) -> BiLaurent:
        return cls({(0, 0): int(c)})

    @classmethod
    def monomial(cls, c: int, eq: int, eA: int) -> BiLaurent:
        """c * q**(eq/2) * A**(eA/2) (half-unit exponents)."""
        return cls({(int(eq), int(eA)): int(c)})

    @classmethod
    def A(cls, power: int = 1) -> BiLaurent:
        return cls({(0, 2 * power): 1})

    @classmethod
    def q(cls, power: int = 1) -> BiLaurent:
        return cls({(2 * power, 0): 1})

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> BiLaurent:
        return cls({(e, 0): c for e, c in p.terms.items()})

    @classmethod
    def coerce(cls, x) -> BiLaurent:
        if isinstance(x, BiLaurent):
            return x
        if isinstance(x, LaurentPoly):
            return cls.from_laurent(x)
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to BiLaurent")

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def a_exponents(self) -> list[int]:
        return sorted({eA for _, eA in self.terms})

    def is_q_only(self) -> bool:
        return all(eA == 0 for _, eA in self.terms)

    def has_even_units(self) -> bool:
        return all(eq % 2 == 0 and eA % 2 == 0 for eq, eA in self.terms)

    def coeff_of_A(self, half_exp_A: int) -> LaurentPoly:
        """The q-coefficient of A**(half_exp_A/2)."""
        return LaurentPoly({eq: c for (eq, eA), c in self.terms.items() if eA == half_exp_A})

    def a_coefficients(self) -> dict[int, LaurentPoly]:
        out: dict[int, dict[int, int]] = {}
        for (eq, eA), c in self.terms.items():
            out.setdefault(eA, {})[eq] = c
        return {eA: LaurentPoly(t) for eA, t in out.items()}

    def to_laurent(self) -> LaurentPoly:
        if not self.is_q_only():
            raise ValueError("polynomial depends on A")
        return LaurentPoly({eq: c for (eq, _), c in self.terms.items()})

    def leading(self) -> tuple[tuple[int, int], int]:
        """Lexicographically largest term under (A, q) order."""
        key = max(self.terms, key=lambda k: (k[1], k[0]))
        return key, self.terms[key]

    # -- arithmetic ---------------------------------------------------
    def _other(self, other):
        if isinstance(other, BiLaurent):
            return other
        if isinstance(other, (int, LaurentPoly)):
            return BiLaurent.coerce(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return BiLaurent(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BiLaurent({k: c * other for k, c in self.terms.items()})
        other = self._other(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[tuple[int, int], int] = {}
        for (q2, a2), c2 in b.items():
            for (q1, a1), c1 in a.items():
                k = (q1 + q2, a1 + a2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers need a unit monomial")
            ((eq, eA), c), = self.terms.items()
            return BiLaurent({(eq * n, eA * n): c if n % 2 else 1})
        result = BiLaurent.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, eq: int, eA: int) -> BiLaurent:
        return BiLaurent({(a + eq, b + eA): c for (a, b), c in self.terms.items()})

    # -- substitutions ------------------------------------------------
    def subs_A_qpow(self, N: int) -> LaurentPoly:
        """A -> q**N: the stored A half-exponent becomes N times a q half-exponent."""
        out: dict[int, int] = {}
        for (eq, eA), c in self.terms.items():
            k = eq + N * eA
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def invert_q(self) -> BiLaurent:
        return BiLaurent({(-eq, eA): c for (eq, eA), c in self.terms.items()})

    def invert_A(self) -> BiLaurent:
        return BiLaurent({(eq, -eA): c for (eq, eA), c in self.terms.items()})

    def a_span(self) -> int:
        """max minus min A-degree, in whole units of A."""
        if not self.terms:
            raise ValueError("A-span of the zero polynomial is undefined")
        exps = [eA for _, eA in self.terms]
        return (max(exps) - min(exps)) // 2

    def exact_div(self, other) -> BiLaurent:
        """Quotient self/other under (A, q) lex order; NonDivisibleError otherwise."""
        other = BiLaurent.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return BiLaurent()
        if other.is_monomial():
            ((dq, dA), c0), = other.terms.items()
            out = {}
            for (eq, eA), c in self.terms.items():
                qt, r = divmod(c, c0)
                if r:
                    raise NonDivisibleError("remainder nonzero", self)
                out[(eq - dq, eA - dA)] = qt
            return BiLaurent(out)

        def order(k):
            return (k[1], k[0])

        (lq, lA), lc = other.leading()
        # a true quotient has each degree bounded below by min(self) - min(other)
        floor_q = min(k[0] for k in self.terms) - min(k[0] for k in other.terms)
        floor_A = min(k[1] for k in self.terms) - min(k[1] for k in other.terms)
        rem = dict(self.terms)
        quot: dict[tuple[int, int], int] = {}
        while rem:
            tq, tA = max(rem, key=order)
            sq, sA = tq - lq, tA - lA
            if sA < floor_A or sq < floor_q:
                raise NonDivisibleError("remainder nonzero", BiLaurent(rem))
            qc, r = divmod(rem[(tq, tA)], lc)
            if r:
                raise NonDivisibleError("remainder nonzero", BiLaurent(rem))
            quot[(sq, sA)] = qc
            for (eq, eA), c in other.terms.items():
                k = (eq + sq, eA + sA)
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return BiLaurent(quot)

    def eval_complex(self, q0: complex, A0: complex) -> complex:
        rq, rA = cmath.sqrt(complex(q0)), cmath.sqrt(complex(A0))
        acc = 0j
        for (eq, eA) in sorted(self.terms):
            acc += self.terms[(eq, eA)] * rq ** eq * rA ** eA
        return acc

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = BiLaurent.coerce(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"BiLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for eA in sorted(self.a_coefficients(), reverse=True):
            coef = self.coeff_of_A(eA)
            mono = "" if eA == 0 else ("A" if eA == 2 else f"A^{_fmt_exp(eA)}")
            if not mono:
                chunks.append(f"({coef})")
            else:
                chunks.append(f"({coef})*{mono}")
        return " + ".join(chunks)
