"""Reduced fractions of bivariate Laurent polynomials."""

from __future__ import annotations

from math import gcd as igcd

from .bilaurent import BiLaurent
from .gcd import bilaurent_gcd
from .laurent import LaurentPoly, NonDivisibleError


class PoleError(ZeroDivisionError):
    """A denominator vanished under substitution or evaluation."""


def _int_content(p: BiLaurent) -> int:
    g = 0
    for c in p.terms.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


class RationalFn:
    """num/den in lowest terms with a canonical denominator.

    Canonical means: gcd(num, den) is a unit, den has lowest q- and
    A-exponents equal to zero, and den's lex-leading coefficient under
    (A, q) order is positive.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1, *, reduced: bool = False):
        num = BiLaurent.coerce(num)
        den = BiLaurent.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _canonical(num, den)
        self.num: BiLaurent = num
        self.den: BiLaurent = den
        self._hash = None

    @classmethod
    def coerce(cls, x) -> RationalFn:
        if isinstance(x, RationalFn):
            return x
        return cls(x)

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == 1

    def is_q_only(self) -> bool:
        return self.num.is_q_only() and self.den.is_q_only()

    def to_bilaurent(self) -> BiLaurent:
        if self.den != 1:
            raise NonDivisibleError("denominator does not clear", self.den)
        return self.num

    def to_laurent(self) -> LaurentPoly:
        return self.to_bilaurent().to_laurent()

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            return RationalFn(self.den ** (-n), self.num ** (-n))
        return RationalFn(self.num ** n, self.den ** n)

    # -- substitutions ------------------------------------------------
    def invert_q(self) -> RationalFn:
        return RationalFn(self.num.invert_q(), self.den.invert_q())

    def invert_A(self) -> RationalFn:
        return RationalFn(self.num.invert_A(), self.den.invert_A())

    def subs_A_qpow(self, N: int) -> RationalFn:
        den = self.den.subs_A_qpow(N)
        if den.is_zero():
            raise PoleError(f"denominator vanishes under A -> q^{N}")
        return RationalFn(self.num.subs_A_qpow(N), den)

    def eval_complex(self, q0: complex, A0: complex | None = None, eps: float = 1e-12) -> complex:
        if A0 is None:
            if not self.is_q_only():
                raise ValueError("A value required for an A-dependent function")
            A0 = 1.0
        d = self.den.eval_complex(q0, A0)
        if abs(d) < eps:
            raise PoleError(f"denominator vanishes at q={q0}")
        return self.num.eval_complex(q0, A0) / d

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFn(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _coerce_or_none(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, (int, LaurentPoly, BiLaurent)):
        return RationalFn(x)
    return None


def _canonical(num: BiLaurent, den: BiLaurent) -> tuple[BiLaurent, BiLaurent]:
    if num.is_zero():
        return BiLaurent(), BiLaurent.const(1)
    if not den.is_monomial():
        if num.is_monomial():
            g = _int_content(den)
            c = next(iter(num.terms.values()))
            g = igcd(g, c)
            if g > 1:
                num, den = num.exact_div(BiLaurent.const(g)), den.exact_div(BiLaurent.const(g))
        else:
            g = bilaurent_gcd(num, den)
            if not (g.is_monomial() and abs(next(iter(g.terms.values()))) == 1):
                num, den = num.exact_div(g), den.exact_div(g)
    else:
        c = abs(next(iter(den.terms.values())))
        g = igcd(_int_content(num), c)
        if g > 1:
            num = num.exact_div(BiLaurent.const(g))
            den = den.exact_div(BiLaurent.const(g))
    mq = min(k[0] for k in den.terms)
    mA = min(k[1] for k in den.terms)
    if mq or mA:
        num, den = num.shift(-mq, -mA), den.shift(-mq, -mA)
    if den.leading()[1] < 0:
        num, den = -num, -den
    return num, den
