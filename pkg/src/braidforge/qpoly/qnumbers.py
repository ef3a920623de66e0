"""Quantum integers and q-factorials."""

from __future__ import annotations

from functools import lru_cache

from .laurent import LaurentPoly


@lru_cache(maxsize=None)
def quantum_int(n: int) -> LaurentPoly:
    """[n] = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n == 0:
        return LaurentPoly()
    sign = 1 if n > 0 else -1
    m = abs(n)
    return LaurentPoly({2 * k: sign for k in range(-(m - 1), m, 2)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    """[n]! = [n][n-1]...[1], with [0]! = 1."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = LaurentPoly.const(1)
    for k in range(2, n + 1):
        out = out * quantum_int(k)
    return out


def rising_q_factorial(j: int, k: int) -> LaurentPoly:
    """[j, k] = [j][j+1]...[j+k-1], with [j, 0] = 1."""
    if k < 0:
        raise ValueError("rising_q_factorial needs k >= 0")
    out = LaurentPoly.const(1)
    for i in range(j, j + k):
        out = out * quantum_int(i)
    return out
