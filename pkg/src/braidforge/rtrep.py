"""Reshetikhin-Turaev data for the fundamental sl2 / sl_N representation.

Two routes are provided and kept independent:

* ``jones_direct`` takes the quantum trace of the 2^n-dimensional tensor
  representation built from the 4x4 R-matrix.
* ``char_coeffs`` / ``homfly_char`` use the irreducible block matrices of
  B_3 and B_4 and assemble HOMFLY-PT through Schur functions.

Block matrices exist in two bases.  The ``rational`` basis keeps the first
generator diagonal; square roots in the off-diagonal entries are removed by
a diagonal similarity, so every entry is a rational function of q.  The
``integral`` basis is a rescaled reduced Burau representation with Laurent
entries and is what the fast paths use.  Traces agree between the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .braid import BraidWord, closure_info
from .burau import NotAKnotError, alexander
from .matrix import QMatrix
from .qpoly import BiLaurent, LaurentPoly, RationalFn, quantum_int, schur_normalized

Q = LaurentPoly.q(1)
QI = LaurentPoly.q(-1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
HECKE_SHIFT = Q - QI  # X^-1 = X - (q - 1/q) for every block generator

SECTORS: dict[int, tuple] = {
    1: ((1,),),
    2: ((2,), (1, 1)),
    3: ((3,), (2, 1), (1, 1, 1)),
    4: ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)),
}
SECTOR_DIMS = {(1,): 1, (2,): 1, (1, 1): 1, (3,): 1, (1, 1, 1): 1, (2, 1): 2,
               (4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3, (1, 1, 1, 1): 1}


# ---------------------------------------------------------------------------
# fundamental R-matrix and the direct quantum trace


def _kron(a: list[list], b: list[list]) -> list[list]:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _mm(a: list[list], b: list[list]) -> list[list]:
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum((a[i][t] * b[t][j] for t in range(k)), ZERO) for j in range(m)] for i in range(n)]


@lru_cache(maxsize=None)
def r_fund_sl2() -> QMatrix:
    """P q^(H(x)H/2) (1 + (q - 1/q) E(x)F) on C^2 (x) C^2, basis 11,12,21,22."""
    E = [[ZERO, ONE], [ZERO, ZERO]]
    F = [[ZERO, ZERO], [ONE, ZERO]]
    I2 = [[ONE, ZERO], [ZERO, ONE]]
    P = [[ONE if (i, j) in ((0, 0), (1, 2), (2, 1), (3, 3)) else ZERO for j in range(4)] for i in range(4)]
    H = [1, -1]
    # q^(H(x)H/2) is diagonal with q^(h1 h2 / 2); half-units: exponent h1*h2
    Qhh = [[LaurentPoly.monomial(1, H[i // 2] * H[i % 2]) if i == j else ZERO for j in range(4)]
           for i in range(4)]
    EF = _kron(E, F)
    I4 = _kron(I2, I2)
    inner = [[I4[i][j] + HECKE_SHIFT * EF[i][j] for j in range(4)] for i in range(4)]
    return QMatrix.from_rows(_mm(P, _mm(Qhh, inner)))


def _local_action(sign: int):
    """Action of R' = q^(1/2) R (or its inverse) on the pair (x, y) of tensor slots.

    Returns a map (x, y) -> list of ((x', y'), coefficient).
    """
    if sign > 0:
        return {
            (0, 0): [((0, 0), Q)],
            (1, 1): [((1, 1), Q)],
            (0, 1): [((1, 0), ONE)],
            (1, 0): [((0, 1), ONE), ((1, 0), HECKE_SHIFT)],
        }
    return {
        (0, 0): [((0, 0), QI)],
        (1, 1): [((1, 1), QI)],
        (0, 1): [((1, 0), ONE), ((0, 1), -HECKE_SHIFT)],
        (1, 0): [((0, 1), ONE)],
    }


_ACTIONS = {1: _local_action(1), -1: _local_action(-1)}


def _apply_letter(vec: dict, g: int) -> dict:
    a = abs(g) - 1
    act = _ACTIONS[1 if g > 0 else -1]
    out: dict = {}
    for state, coef in vec.items():
        pair = (state[a], state[a + 1])
        for (x, y), c in act[pair]:
            new = state[:a] + (x, y) + state[a + 2:]
            val = out.get(new)
            out[new] = coef * c if val is None else val + coef * c
    return {s: c for s, c in out.items() if not c.is_zero()}


def quantum_trace(w: BraidWord) -> LaurentPoly:
    """Tr(K^(x)n * prod R'), K = diag(q, 1/q), R' = q^(1/2) R."""
    n = w.strands
    total = ZERO
    for state in product((0, 1), repeat=n):
        vec = {state: ONE}
        for g in reversed(w.letters):
            vec = _apply_letter(vec, g)
            if not vec:
                break
        diag = vec.get(state)
        if diag is None:
            continue
        weight = sum(1 if s == 0 else -1 for s in state)
        total = total + diag * LaurentPoly.q(weight)
    return total


def jones_direct_link(w: BraidWord) -> LaurentPoly:
    """Unreduced Jones value q^(-2W) Tr_q(prod R'); the unknot gives [2]."""
    return quantum_trace(w) * LaurentPoly.q(-2 * w.writhe)


def jones_direct(w: BraidWord) -> LaurentPoly:
    """Jones polynomial of a knot closure, normalized so the unknot is 1."""
    info = closure_info(w)
    if not info.is_knot:
        raise NotAKnotError(info.components)
    return jones_direct_link(w).exact_div(quantum_int(2))


# ---------------------------------------------------------------------------
# block R-matrices


def _rf(x) -> RationalFn:
    return RationalFn.coerce(x)


def _rational_2x2_second() -> list[list[RationalFn]]:
    b2, b3 = quantum_int(2), quantum_int(3)
    return [
        [RationalFn(-1, LaurentPoly.q(2) * b2), _rf(1)],
        [RationalFn(b3, b2 * b2), RationalFn(LaurentPoly.q(2), b2)],
    ]


def _rational_3x3_third() -> list[list[RationalFn]]:
    b2, b3 = quantum_int(2), quantum_int(3)
    q2pm = LaurentPoly({4: 1, -4: 1})
    return [
        [RationalFn(-1, LaurentPoly.q(3) * b3), _rf(1)],
        [RationalFn(b2 * b2 * q2pm, b3 * b3), RationalFn(LaurentPoly.q(3), b3)],
    ]


@lru_cache(maxsize=None)
def _rational_gens(Y: tuple) -> tuple:
    q, mqi, z = _rf(Q), _rf(-QI), _rf(0)
    if Y in ((2, 1), (2, 2)):
        R1 = [[q, z], [z, mqi]]
        R2 = _rational_2x2_second()
        gens = (R1, R2) if Y == (2, 1) else (R1, R2, R1)
    elif Y in ((3, 1), (2, 1, 1)):
        M2, M3 = _rational_2x2_second(), _rational_3x3_third()
        R1 = [[q, z, z], [z, q, z], [z, z, mqi]]
        R2 = [[q, z, z], [z, M2[0][0], M2[0][1]], [z, M2[1][0], M2[1][1]]]
        R3 = [[M3[0][0], M3[0][1], z], [M3[1][0], M3[1][1], z], [z, z, q]]
        gens = (R1, R2, R3)
        if Y == (2, 1, 1):
            gens = tuple([[-x.invert_q() for x in row] for row in R] for R in gens)
    else:
        raise ValueError(f"no multi-dimensional block for {Y}")
    return tuple(QMatrix.from_rows(R) for R in gens)


def _burau_like(i: int, dim: int, t: LaurentPoly) -> list[list[LaurentPoly]]:
    """Reduced Burau generator of B_(dim+1) at parameter t (1-based i)."""
    g = [[ONE if r == c else ZERO for c in range(dim)] for r in range(dim)]
    a = i - 1
    if i > 1:
        g[a][a - 1] = t
    g[a][a] = -t
    if i < dim:
        g[a][a + 1] = ONE
    return g


@lru_cache(maxsize=None)
def _integral_gens(Y: tuple) -> tuple:
    qm2, q2 = LaurentPoly.q(-2), LaurentPoly.q(2)
    if Y in ((2, 1), (2, 2)):
        G = [[[Q * x for x in row] for row in _burau_like(i, 2, qm2)] for i in (1, 2)]
        gens = (G[0], G[1]) if Y == (2, 1) else (G[0], G[1], G[0])
    elif Y == (3, 1):
        gens = tuple([[Q * x for x in row] for row in _burau_like(i, 3, qm2)] for i in (1, 2, 3))
    elif Y == (2, 1, 1):
        gens = tuple([[-QI * x for x in row] for row in _burau_like(i, 3, q2)] for i in (1, 2, 3))
    else:
        raise ValueError(f"no multi-dimensional block for {Y}")
    return tuple(QMatrix.from_rows(R) for R in gens)


def _scalar_block(Y: tuple) -> LaurentPoly:
    if len(Y) == 1:
        return Q
    if all(r == 1 for r in Y):
        return -QI
    raise ValueError(f"{Y} is not a one-dimensional sector")


def block_r(Y, i: int, basis: str = "rational") -> QMatrix:
    """Image of sigma_i in the irreducible block Y."""
    Y = tuple(Y)
    if Y not in SECTOR_DIMS:
        raise ValueError(f"unsupported diagram {Y}")
    n = sum(Y)
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator {i} out of range for {Y}")
    if SECTOR_DIMS[Y] == 1:
        s = _scalar_block(Y)
        return QMatrix.from_rows([[_rf(s) if basis == "rational" else s]])
    gens = _rational_gens(Y) if basis == "rational" else _integral_gens(Y)
    return gens[i - 1]


@lru_cache(maxsize=None)
def block_r_inverse(Y, i: int, basis: str = "rational") -> QMatrix:
    """Inverse via the Hecke relation X^-1 = X - (q - 1/q) I."""
    X = block_r(Y, i, basis)
    n = X.shape[0]
    shift = QMatrix.identity(n, rational=basis == "rational").scale(
        _rf(HECKE_SHIFT) if basis == "rational" else HECKE_SHIFT)
    return X - shift


def sector_matrix(Y, w: BraidWord, basis: str = "integral") -> QMatrix:
    """Ordered product of block images over the letters of w."""
    Y = tuple(Y)
    if sum(Y) != w.strands:
        raise ValueError(f"diagram {Y} does not match {w.strands} strands")
    dim = SECTOR_DIMS[Y]
    out = QMatrix.identity(dim, rational=basis == "rational")
    for g in w.letters:
        m = block_r(Y, g, basis) if g > 0 else block_r_inverse(Y, -g, basis)
        out = out @ m
    return out


@dataclass
class BlockRep:
    strands: int
    basis: str = "integral"
    matrices: dict = field(default_factory=dict)

    @classmethod
    def build(cls, strands: int, basis: str = "integral") -> BlockRep:
        mats = {Y: [block_r(Y, i, basis) for i in range(1, strands)] for Y in SECTORS[strands]}
        return cls(strands, basis, mats)


# ---------------------------------------------------------------------------
# character expansion


@dataclass
class CharCoeffs:
    """Sector traces a_Y(q) for a braid (or a hypothetical one)."""

    a: dict
    writhe: int
    strands: int

    def __getitem__(self, Y) -> RationalFn:
        return self.a[tuple(Y)]

    def as_rational(self) -> dict:
        return {Y: RationalFn.coerce(v) for Y, v in self.a.items()}


def char_coeffs(w: BraidWord, basis: str = "integral") -> CharCoeffs:
    n = w.strands
    if n not in SECTORS:
        raise ValueError("character coefficients are implemented for 1 to 4 strands")
    W = w.writhe
    a = {}
    for Y in SECTORS[n]:
        if SECTOR_DIMS[Y] == 1:
            if n == 1:
                a[Y] = _rf(1)
            else:
                a[Y] = _rf(_scalar_block(Y) ** W)
        else:
            a[Y] = _rf(sector_matrix(Y, w, basis).trace())
    return CharCoeffs(a, W, n)


@lru_cache(maxsize=None)
def _schur_common(n: int):
    """Common q-denominator D and numerators N_Y with S*_Y = N_Y / D."""
    from .qpoly.gcd import bilaurent_gcd

    D = BiLaurent.const(1)
    for Y in SECTORS[n]:
        den = schur_normalized(Y).den
        g = bilaurent_gcd(D, den)
        D = D * den.exact_div(g)
    nums = {Y: schur_normalized(Y).num * D.exact_div(schur_normalized(Y).den) for Y in SECTORS[n]}
    return D, nums


def assemble_homfly(c: CharCoeffs, allow_link: bool = False):
    """A^(-W) sum_Y a_Y S*_Y.

    Returns a BiLaurent when denominators clear; with ``allow_link`` a
    RationalFn is returned as-is instead of raising.
    """
    n, W = c.strands, c.writhe
    coeffs = c.as_rational()
    AW = BiLaurent.A(-W)
    if all(v.den == 1 for v in coeffs.values()):
        D, nums = _schur_common(n)
        total = BiLaurent()
        for Y, v in coeffs.items():
            total = total + v.num * nums[Y]
        total = total * AW
        try:
            return total.exact_div(D)
        except ArithmeticError:
            if allow_link:
                return RationalFn(total, D)
            raise
    total = RationalFn(0)
    for Y, v in coeffs.items():
        total = total + v * schur_normalized(Y)
    total = total * RationalFn(AW)
    if total.den == 1:
        return total.num
    if allow_link:
        return total
    raise ArithmeticError(f"character expansion did not clear denominators: {total.den}")


def homfly_char(w: BraidWord, allow_link: bool = False, basis: str = "integral"):
    """HOMFLY-PT (unknot = 1) of the closure via the character expansion."""
    info = closure_info(w)
    if not info.is_knot and not allow_link:
        raise NotAKnotError(info.components)
    return assemble_homfly(char_coeffs(w, basis), allow_link=allow_link)


def three_route_check(w: BraidWord) -> dict:
    """Compare HOMFLY specializations against the direct Jones and Burau routes."""
    H = homfly_char(w)
    jones = jones_direct(w)
    alex = alexander(w)
    h_jones = H.subs_A_qpow(2)
    h_alex = H.subs_A_qpow(0)
    from .burau import normalize_unit

    return {
        "jones_ok": h_jones == jones,
        "alexander_ok": normalize_unit(h_alex) == alex,
        "H": H,
        "jones": jones,
        "alexander": alex,
    }
