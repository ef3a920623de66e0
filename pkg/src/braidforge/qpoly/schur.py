"""Schur functions at the topological locus p_k = {A^k}/{q^k}."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .bilaurent import BiLaurent
from .laurent import LaurentPoly, quantum_bracket
from .rational import RationalFn

Diagram = tuple  # weakly decreasing row lengths


def as_diagram(Y: Sequence[int]) -> Diagram:
    Y = tuple(int(r) for r in Y)
    if any(r <= 0 for r in Y) or any(a < b for a, b in zip(Y, Y[1:])):
        raise ValueError(f"not a Young diagram: {Y}")
    return Y


def transpose(Y: Sequence[int]) -> Diagram:
    Y = as_diagram(Y)
    if not Y:
        return ()
    return tuple(sum(1 for r in Y if r > j) for j in range(Y[0]))


def hook_lengths(Y: Sequence[int]) -> dict[tuple[int, int], int]:
    """Hook length of every cell (row, col), zero-based."""
    Y = as_diagram(Y)
    Yt = transpose(Y)
    return {
        (i, j): (Y[i] - j - 1) + (Yt[j] - i - 1) + 1
        for i in range(len(Y))
        for j in range(Y[i])
    }


def _A_bracket(content: int) -> BiLaurent:
    """{A q^c} = A q^c - A^-1 q^-c."""
    return BiLaurent({(2 * content, 2): 1, (-2 * content, -2): -1})


@lru_cache(maxsize=None)
def schur_special(Y: Sequence[int]) -> RationalFn:
    """Product over cells of {A q^(col-row)} / {q^hook}."""
    Y = as_diagram(Y)
    num = BiLaurent.const(1)
    den = LaurentPoly.const(1)
    for (i, j), h in hook_lengths(Y).items():
        num = num * _A_bracket(j - i)
        den = den * quantum_bracket(2 * h)
    return RationalFn(num, den)


@lru_cache(maxsize=None)
def schur_normalized(Y: Sequence[int]) -> RationalFn:
    """S*_Y = S_Y * {q}/{A}, normalized so that S*_[1] = 1."""
    Y = as_diagram(Y)
    return schur_special(Y) * RationalFn(quantum_bracket(2), BiLaurent({(0, 2): 1, (0, -2): -1}))


def diagrams_of_size(n: int) -> list[Diagram]:
    """All partitions of n, in reverse lexicographic order."""
    out: list[Diagram] = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for r in range(min(rem, cap), 0, -1):
            rec(rem - r, r, acc + [r])

    rec(n, n, [])
    return out
