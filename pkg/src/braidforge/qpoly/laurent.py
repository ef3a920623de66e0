"""Univariate Laurent polynomials in q with exact integer coefficients.

Exponents are stored in half-units: the stored key ``e`` stands for
``q**(e/2)``.  Public results are expected to carry even keys only; the
half-unit resolution exists for the raw sl2 R-matrix entries.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Mapping


class NonDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def _clean(terms: Mapping) -> dict:
    return {e: c for e, c in terms.items() if c}


class LaurentPoly:
    """Exact Laurent polynomial in q; immutable after construction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms: dict[int, int] = _clean(terms) if terms else {}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: int(c)})

    @classmethod
    def monomial(cls, c: int, half_exp: int) -> LaurentPoly:
        return cls({int(half_exp): int(c)})

    @classmethod
    def q(cls, power: int = 1) -> LaurentPoly:
        """q**power for an integer power."""
        return cls({2 * power: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> LaurentPoly:
        """Build sum c_i q**(low+i) from a dense coefficient list."""
        return cls({2 * (low + i): int(c) for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_integral(self) -> bool:
        """True when every exponent is a whole power of q."""
        return all(e % 2 == 0 for e in self.terms)

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def coeff(self, half_exp: int) -> int:
        return self.terms.get(half_exp, 0)

    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers need a unit monomial")
            (e, c), = self.terms.items()
            return LaurentPoly({e * n: 1 if n % 2 == 0 else c})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, half_exp: int) -> LaurentPoly:
        """Multiply by q**(half_exp/2)."""
        return LaurentPoly({e + half_exp: c for e, c in self.terms.items()})

    def invert_q(self) -> LaurentPoly:
        """The substitution q -> 1/q."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def exact_div(self, other) -> LaurentPoly:
        """Quotient self/other, raising NonDivisibleError if inexact."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if other.is_monomial():
            (e0, c0), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                qt, r = divmod(c, c0)
                if r:
                    raise NonDivisibleError("remainder nonzero", self)
                out[e - e0] = qt
            return LaurentPoly(out)
        d_top = other.max_exp()
        d_lead = other.terms[d_top]
        floor = self.min_exp() - other.min_exp()
        rem = dict(self.terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            shift = top - d_top
            if shift < floor:
                raise NonDivisibleError("remainder nonzero", LaurentPoly(rem))
            qc, r = divmod(rem[top], d_lead)
            if r:
                raise NonDivisibleError("remainder nonzero", LaurentPoly(rem))
            quot[shift] = qc
            for e, c in other.terms.items():
                k = e + shift
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    # -- evaluation ---------------------------------------------------
    def eval_complex(self, q0: complex) -> complex:
        """Evaluate at q0, using the principal square root for half powers."""
        if not self.terms:
            return 0j
        root = cmath.sqrt(complex(q0))
        acc = 0j
        for e in sorted(self.terms):
            acc += self.terms[e] * root ** e
        return acc

    def eval_at_one(self) -> int:
        return sum(self.terms.values())

    # -- comparison / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({format_terms(self.terms, 'q')})"

    def __str__(self):
        return format_terms(self.terms, "q")


def _fmt_exp(half_exp: int) -> str:
    if half_exp % 2 == 0:
        return str(half_exp // 2)
    return f"({half_exp}/2)"


def format_terms(terms: Mapping[int, int], var: str) -> str:
    """Human-readable rendering, highest power first."""
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 2 else f"{var}^{_fmt_exp(e)}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def quantum_bracket(half_exp: int) -> LaurentPoly:
    """{x} = x - 1/x for x = q**(half_exp/2)."""
    return LaurentPoly({half_exp: 1, -half_exp: -1})
