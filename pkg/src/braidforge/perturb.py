"""Truncated hbar-expansion of HOMFLY-PT after q = e^(hbar/2), A = e^(N hbar/2).

Coefficients are polynomials in N with exact rational coefficients; the
n-th one collects the Vassiliev invariants of order n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .qpoly import BiLaurent, LaurentPoly

MAX_ORDER = 16

NPoly = tuple  # dense coefficients in N, lowest degree first


def _trim(p: list) -> tuple:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def npoly_str(p: Sequence[Fraction]) -> str:
    if not p:
        return "0"
    parts = []
    for d, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if d == 0 else ("N" if d == 1 else f"N^{d}")
        coef = str(c)
        if not mono:
            parts.append(coef)
        elif c in (1, -1):
            parts.append(mono if c == 1 else f"-{mono}")
        else:
            parts.append(f"{coef}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class HbarSeries:
    order: int
    coeffs: tuple  # coeffs[n] is the N-polynomial multiplying hbar^n

    def coeff(self, n: int) -> NPoly:
        if n > self.order:
            raise ValueError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def at_N(self, N) -> list[Fraction]:
        return [sum((Fraction(c) * Fraction(N) ** d for d, c in enumerate(p)), Fraction(0))
                for p in self.coeffs]

    def is_zero_beyond_constant(self) -> bool:
        return all(not p for p in self.coeffs[1:])

    def to_json(self) -> dict:
        return {"order": self.order,
                "coeffs": [[str(c) for c in p] for p in self.coeffs]}

    def __str__(self):
        return " + ".join(f"({npoly_str(p)})*h^{n}" for n, p in enumerate(self.coeffs) if p) or "0"


def expand(H, order: int) -> HbarSeries:
    """Series of H up to hbar^order.

    A term q^(a/2) A^(b/2) (half-unit keys a, b) becomes exp(hbar (a + N b) / 4).
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must lie in 0..{MAX_ORDER}")
    if isinstance(H, LaurentPoly):
        H = BiLaurent.from_laurent(H)
    H = BiLaurent.coerce(H)
    out = [[Fraction(0)] * (n + 1) for n in range(order + 1)]
    for (eq, eA), c in H.terms.items():
        # ((eq + N eA)/4)^n / n!  expanded binomially in N
        a, b = Fraction(eq, 4), Fraction(eA, 4)
        for n in range(order + 1):
            scale = Fraction(c, math.factorial(n))
            for d in range(n + 1):
                if b == 0 and d:
                    break
                out[n][d] += scale * math.comb(n, d) * a ** (n - d) * b ** d
    return HbarSeries(order, tuple(_trim(p) for p in out))


def vanishing_order(s: HbarSeries) -> float:
    """Smallest n >= 1 with a nonzero coefficient; math.inf when none up to the order."""
    if s.coeffs[0] != (Fraction(1),):
        raise ValueError("series does not start with 1")
    for n in range(1, s.order + 1):
        if s.coeffs[n]:
            return n
    return math.inf
