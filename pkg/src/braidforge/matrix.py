"""Small dense matrices over the exact rings of :mod:`braidforge.qpoly`.

Entries are LaurentPoly or RationalFn; both support + - * and the
operations below only rely on that plus exact division for determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .qpoly import LaurentPoly, RationalFn


def _zero_like(x):
    return RationalFn(0) if isinstance(x, RationalFn) else LaurentPoly()


def _one_like(x):
    return RationalFn(1) if isinstance(x, RationalFn) else LaurentPoly.const(1)


def _exact_div(a, b):
    if isinstance(a, RationalFn) or isinstance(b, RationalFn):
        return RationalFn.coerce(a) / RationalFn.coerce(b)
    return a.exact_div(b)


@dataclass(frozen=True)
class QMatrix:
    rows: tuple  # tuple of tuples of entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> QMatrix:
        rows = tuple(tuple(LaurentPoly.coerce(x) if isinstance(x, int) else x for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows)

    @classmethod
    def identity(cls, n: int, rational: bool = False) -> QMatrix:
        one = RationalFn(1) if rational else LaurentPoly.const(1)
        zero = RationalFn(0) if rational else LaurentPoly()
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, f: Callable) -> QMatrix:
        return QMatrix(tuple(tuple(f(x) for x in r) for r in self.rows))

    def to_rational(self) -> QMatrix:
        return self.map(RationalFn.coerce)

    def is_laurent(self) -> bool:
        return all(isinstance(x, LaurentPoly) for r in self.rows for x in r)

    def to_laurent(self) -> QMatrix:
        return self.map(lambda x: x if isinstance(x, LaurentPoly) else x.to_laurent())

    def __matmul__(self, other: QMatrix) -> QMatrix:
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for x, y in zip(r, c):
                    if x.is_zero() or y.is_zero():
                        continue
                    t = x * y
                    acc = t if acc is None else acc + t
                row.append(acc if acc is not None else _zero_like(r[0]))
            out.append(tuple(row))
        return QMatrix(tuple(out))

    def __add__(self, other: QMatrix) -> QMatrix:
        return QMatrix(tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: QMatrix) -> QMatrix:
        return QMatrix(tuple(tuple(x - y for x, y in zip(a, b)) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> QMatrix:
        return self.map(lambda x: -x)

    def scale(self, c) -> QMatrix:
        return self.map(lambda x: x * c)

    def transpose(self) -> QMatrix:
        return QMatrix(tuple(zip(*self.rows)))

    def trace(self):
        acc = _zero_like(self.rows[0][0])
        for i in range(len(self.rows)):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        return det_bareiss([list(r) for r in self.rows])

    def inverse(self) -> QMatrix:
        """Exact inverse by Gauss-Jordan over rational functions."""
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of a non-square matrix")
        a = [[RationalFn.coerce(x) for x in r] + [RationalFn(1 if i == j else 0) for j in range(n)]
             for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = RationalFn(1) / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        out = QMatrix(tuple(tuple(r[n:]) for r in a))
        if self.is_laurent():
            try:
                return out.to_laurent()
            except ArithmeticError:
                pass
        return out

    def pow(self, k: int) -> QMatrix:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = QMatrix.identity(self.shape[0], rational=not self.is_laurent())
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def eval_complex(self, q0: complex):
        import numpy as np

        return np.array([[x.eval_complex(q0) for x in r] for r in self.rows], dtype=complex)

    def __eq__(self, other):
        if not isinstance(other, QMatrix) or self.shape != other.shape:
            return NotImplemented
        return all(x == y for a, b in zip(self.rows, other.rows) for x, y in zip(a, b))

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


def det_bareiss(a: list[list]):
    """Fraction-free Bareiss elimination; divisions are exact."""
    n = len(a)
    if n == 0:
        return LaurentPoly.const(1)
    a = [list(r) for r in a]
    sign = 1
    prev = _one_like(a[0][0])
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return _zero_like(a[0][0])
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d
