"""Burau matrices (parameter t = q^2) and the Alexander polynomial."""

from __future__ import annotations

from functools import lru_cache

from .braid import BraidWord, closure_info
from .matrix import QMatrix
from .qpoly import LaurentPoly

ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
T = LaurentPoly.q(2)


class NotAKnotError(ValueError):
    """Raised when an operation needs a one-component closure."""

    def __init__(self, components: int):
        super().__init__(f"closure has {components} components, a knot was required")
        self.components = components


def _grid(n: int) -> list[list[LaurentPoly]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def burau_unreduced(i: int, n: int) -> QMatrix:
    """Identity except [[1-t, t], [1, 0]] on rows/cols (i, i+1), 1-based."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator {i} out of range for {n} strands")
    g = _grid(n)
    a = i - 1
    g[a][a], g[a][a + 1] = ONE - T, T
    g[a + 1][a], g[a + 1][a + 1] = ONE, ZERO
    return QMatrix.from_rows(g)


@lru_cache(maxsize=None)
def burau_reduced(i: int, n: int) -> QMatrix:
    """(n-1)x(n-1) reduced Burau generator; for n=2 the 1x1 matrix (-t)."""
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"generator {i} out of range for {n} strands")
    if n == 2:
        return QMatrix.from_rows([[-T]])
    g = _grid(n - 1)
    a = i - 1
    if i > 1:
        g[a][a - 1] = T
    g[a][a] = -T
    if i < n - 1:
        g[a][a + 1] = ONE
    return QMatrix.from_rows(g)


@lru_cache(maxsize=None)
def _generator(i: int, n: int, reduced: bool, sign: int) -> QMatrix:
    m = burau_reduced(i, n) if reduced else burau_unreduced(i, n)
    return m if sign > 0 else m.inverse()


def burau_rep(w: BraidWord, reduced: bool = True) -> QMatrix:
    n = w.strands
    dim = n - 1 if reduced else n
    out = QMatrix.identity(dim)
    for g in w.letters:
        out = out @ _generator(abs(g), n, reduced, 1 if g > 0 else -1)
    return out


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Multiply by +-q^(2k) so p is palindromic and positive at q = 1."""
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    total = p.min_exp() + p.max_exp()
    if total % 4:
        raise ValueError(f"no unit q^(2k) centres {p}")
    out = p.shift(-total // 2)
    if out != out.invert_q():
        raise ValueError(f"{p} is not palindromic up to a unit")
    if out.eval_at_one() < 0:
        out = -out
    return out


def _cyclotomic_ratio(n: int) -> LaurentPoly:
    """(1 - t^n)/(1 - t) = 1 + t + ... + t^(n-1)."""
    return LaurentPoly({4 * k: 1 for k in range(n)})


def alexander(w: BraidWord) -> LaurentPoly:
    """(1 - q^2)/(1 - q^(2n)) det(1 - B(w)), unit-normalized."""
    info = closure_info(w)
    if not info.is_knot:
        raise NotAKnotError(info.components)
    n = w.strands
    if n == 1:
        return ONE
    B = burau_rep(w, reduced=True)
    d = (QMatrix.identity(n - 1) - B).det()
    return normalize_unit(d.exact_div(_cyclotomic_ratio(n)))


def alexander_via_rmatrix(w: BraidWord) -> LaurentPoly:
    """Alexander polynomial from the [2,1] / [3,1] block R-matrices.

    Evaluates q^((n-1)+W) (1-q^2)/(1-q^(2n)) det(E - q^(-W) R) and
    normalizes the unit as in :func:`alexander`.
    """
    from .rtrep import sector_matrix

    if w.strands not in (3, 4):
        raise ValueError("the R-matrix route covers 3 and 4 strands")
    info = closure_info(w)
    if not info.is_knot:
        raise NotAKnotError(info.components)
    n, W = w.strands, w.writhe
    Y = (2, 1) if n == 3 else (3, 1)
    R = sector_matrix(Y, w, basis="rational")
    dim = R.shape[0]
    M = QMatrix.identity(dim, rational=True) - R.scale(LaurentPoly.q(-W))
    d = M.det() * LaurentPoly.q(n - 1 + W)
    poly = d.to_laurent()
    return normalize_unit(poly.exact_div(_cyclotomic_ratio(n)))
