"""Unit-circle screening of sector eigenvalues at roots of unity.

At q = exp(2 pi i / k) the block R-matrices are unitary only for k in an
admissible region.  A braid realizing a candidate HOMFLY-PT polynomial must
then have sector eigenvalues of modulus one there; this module tests that
necessary condition over a k-grid for the 3-strand box parameterizations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .braid import BraidWord, box_word, closure_info
from .qpoly import LaurentPoly
from .rtrep import block_r, block_r_inverse
from .matrix import QMatrix

SCREEN_SECTORS = ((3, 1), (2, 1, 1), (2, 2))


@dataclass(frozen=True)
class KGrid:
    k_min: float = 0.1
    k_max: float = 150.0
    step: float = 0.1

    def __post_init__(self):
        if not (0 < self.k_min <= self.k_max) or self.step <= 0:
            raise ValueError("grid needs 0 < k_min <= k_max and a positive step")

    def values(self) -> np.ndarray:
        n = int(round((self.k_max - self.k_min) / self.step)) + 1
        return np.round(self.k_min + self.step * np.arange(n), 10)

    def admissible(self, strands: int = 4) -> np.ndarray:
        ks = self.values()
        return ks[[admissible_k(float(k), strands) for k in ks]]


_BOUNDARY_EPS = 1e-12


def admissible_k(k: float, strands: int) -> bool:
    """cos(4 pi / k) >= 0 for 4 strands, >= -1/2 for 3 strands (boundaries included).

    Negative k mirror positive k (q -> conj(q)), so the same predicate applies.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    c = math.cos(4 * math.pi / k)
    if strands == 4:
        return c >= -_BOUNDARY_EPS
    if strands == 3:
        return c >= -0.5 - _BOUNDARY_EPS
    raise ValueError("admissibility is defined for 3 and 4 strands")


def _qint(n: int, k: float) -> float:
    """[n] at q = exp(2 pi i / k); real on the unit circle."""
    # cosine sum instead of sin(n t)/sin(t), which is 0/0 at q = +-1
    th = 2 * math.pi / k
    return math.fsum(math.cos((n - 1 - 2 * j) * th) for j in range(n))


@dataclass
class UnitarityReport:
    k: float
    strands: int
    deviation: float
    off_diagonal: float
    matrices: list = field(default_factory=list)


def unitarity_U(k: float, strands: int = 3) -> UnitarityReport:
    """Max |U U^dagger - I| for the rotations that diagonalize the block generators."""
    two = _qint(2, k)
    if abs(two) < 1e-12:
        raise ZeroDivisionError(f"[2] vanishes at k={k}")
    three = _qint(3, k)
    c = 1 / two
    s = np.sqrt(complex(three)) / two
    mats = [np.array([[c, s], [-s, c]], dtype=complex)]
    if strands == 4:
        if abs(three) < 1e-12:
            raise ZeroDivisionError(f"[3] vanishes at k={k}")
        # axial distance 3 in [3,1]: S^2 = [2][4] / [3]^2 = 2 cos(4 pi / k) [2]^2 / [3]^2
        c3 = 1 / three
        s3 = np.sqrt(complex(two * _qint(4, k))) / three
        mats.append(np.array([[c3, s3], [-s3, c3]], dtype=complex))
    elif strands != 3:
        raise ValueError("unitarity_U covers 3 and 4 strands")
    dev = off = 0.0
    for U in mats:
        D = U @ U.conj().T - np.eye(2)
        dev = max(dev, float(np.max(np.abs(D))))
        off = max(off, float(abs(D[0, 1])), float(abs(D[1, 0])))
    return UnitarityReport(k, strands, dev, off, mats)


# ---------------------------------------------------------------------------
# eigenvalue systems


def sector_determinant(sector, W: int, q0):
    sector = tuple(sector)
    if sector == (3, 1):
        return (-q0) ** W
    if sector == (2, 1, 1):
        return q0 ** (-W)
    if sector == (2, 2):
        return (-1.0) ** W + 0 * q0
    raise ValueError(f"no eigenvalue system for {sector}")


class ResidualError(ArithmeticError):
    pass


def _polish(coeffs: np.ndarray, roots: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One Newton step on each root; returns roots and relative residuals.

    coeffs: (..., d+1) monic, highest degree first; roots: (..., d).
    """
    d = coeffs.shape[-1] - 1
    powers = roots[..., None] ** np.arange(d, -1, -1)  # (..., d, d+1)
    p = np.einsum("...j,...ij->...i", coeffs, powers)
    dcoef = coeffs[..., :-1] * np.arange(d, 0, -1)
    dp = np.einsum("...j,...ij->...i", dcoef, powers[..., 1:])
    step = np.where(np.abs(dp) > 1e-14, p / np.where(dp == 0, 1, dp), 0)
    roots = roots - step
    powers = roots[..., None] ** np.arange(d, -1, -1)
    p = np.einsum("...j,...ij->...i", coeffs, powers)
    scale = np.einsum("...j,...ij->...i", np.abs(coeffs), np.abs(powers))
    return roots, np.abs(p) / np.maximum(scale, 1e-300)


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    """Roots of monic polynomials (..., d+1) via batched companion eigenvalues."""
    d = coeffs.shape[-1] - 1
    shape = coeffs.shape[:-1]
    C = np.zeros(shape + (d, d), dtype=complex)
    C[..., 0, :] = -coeffs[..., 1:]
    for i in range(1, d):
        C[..., i, i - 1] = 1
    return np.linalg.eigvals(C)


def _sector_coeffs(a, abar, det, sector) -> np.ndarray:
    a, abar, det = np.broadcast_arrays(np.asarray(a, complex), np.asarray(abar, complex),
                                       np.asarray(det, complex))
    if tuple(sector) == (2, 2):
        return np.stack([np.ones_like(a), -a, det], axis=-1)
    return np.stack([np.ones_like(a), -a, det * abar, -det], axis=-1)


def sector_eigenvalues(aY_at_q: complex, aY_at_qinv: complex, W: int, sector, q0: complex,
                       residual_tol: float = 1e-10) -> list[complex]:
    """Roots of lambda^3 - a lambda^2 + det*abar lambda - det (or the [2,2] quadratic)."""
    det = sector_determinant(sector, W, complex(q0))
    coeffs = _sector_coeffs(aY_at_q, aY_at_qinv, det, sector)
    roots, res = _polish(coeffs, _companion_roots(coeffs))
    if np.max(res) > residual_tol:
        raise ResidualError(f"residual {np.max(res):.3g} exceeds {residual_tol:g} at q={q0}")
    return [complex(r) for r in roots]


# ---------------------------------------------------------------------------
# numeric a-coefficients of the candidate knots


def _eval_laurent(p: LaurentPoly, theta: np.ndarray) -> np.ndarray:
    """p(exp(i theta)) for an array of angles."""
    out = np.zeros(theta.shape, dtype=complex)
    for e, c in p.terms.items():
        out += c * np.exp(0.5j * e * theta)
    return out


def candidate_coeffs(a22: np.ndarray, q: np.ndarray, m: int) -> dict:
    """Numeric a31 and a211 of the m-th candidate given a22 at the same q."""
    P = sum(q ** (2 * i) for i in range(5))
    D = 1 + q ** 2 + q ** 4
    a31 = -(a22 * q ** 2 + q ** (2 * m + 3) * P - q ** (11 + 4 * m) * (1 + q ** 2)) / D
    a211 = -(1 + q ** 2 - q ** (2 + 2 * m) * P + a22 * q ** (11 + 4 * m)) / (q ** (9 + 4 * m) * D)
    return {(3, 1): a31, (2, 1, 1): a211, (2, 2): a22}


# ---------------------------------------------------------------------------
# screening


@dataclass
class ScreenReport:
    braid: BraidWord
    exponents: tuple
    W: int
    m: int
    max_deviation: float
    failed_k: list
    verdict: str
    indeterminate_k: list = field(default_factory=list)
    points: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "braid": self.braid.to_json(),
            "W": self.W,
            "m": self.m,
            "max_deviation": self.max_deviation,
            "failed_k": list(self.failed_k),
            "indeterminate_k": list(self.indeterminate_k),
            "points": self.points,
            "verdict": self.verdict,
        }


def a22_exact(w3: BraidWord) -> LaurentPoly:
    """Trace of w3 in the [2,1] block, multiplying runs of equal letters as powers."""
    if w3.strands != 3:
        raise ValueError("a22 is read from a 3-strand word")
    out = QMatrix.identity(2)
    for g, run in itertools.groupby(w3.letters):
        n = len(list(run))
        base = block_r((2, 1), g, "integral") if g > 0 else block_r_inverse((2, 1), -g, "integral")
        out = out @ base.pow(n)
    return out.trace()


def screen_braid(w3: BraidWord, m: int, grid: KGrid | None = None, tol: float = 1e-6,
                 sectors: Sequence = ((3, 1),), residual_tol: float = 1e-10,
                 chunk: int = 256, exponents: tuple = ()) -> ScreenReport:
    """Test |lambda| = 1 for the candidate's sector eigenvalues on admissible grid points.

    Grid points are processed in chunks of ascending k and the screen stops
    after the first chunk containing a failure.
    """
    if w3.strands != 3:
        raise ValueError("screen_braid takes 3-strand words")
    comps = closure_info(w3).components
    if comps != 2:
        raise ValueError(f"closure has {comps} components, 2 were required")
    W = 2 * m + 5
    if w3.writhe != W:
        raise ValueError(f"writhe {w3.writhe} does not equal 2m+5 = {W}")
    grid = grid or KGrid()
    ks = grid.admissible(4)
    a22 = a22_exact(w3)
    max_dev, failed, indet = 0.0, [], []
    for start in range(0, len(ks), chunk):
        kc = ks[start:start + chunk]
        theta = 2 * np.pi / kc
        q = np.exp(1j * theta)
        qi = np.conj(q)
        aq = candidate_coeffs(_eval_laurent(a22, theta), q, m)
        aqi = candidate_coeffs(_eval_laurent(a22, -theta), qi, m)
        bad = np.zeros(len(kc), dtype=bool)
        for Y in sectors:
            det = sector_determinant(Y, W, q)
            coeffs = _sector_coeffs(aq[tuple(Y)], aqi[tuple(Y)], det, Y)
            roots, res = _polish(coeffs, _companion_roots(coeffs))
            dev = np.max(np.abs(np.abs(roots) - 1), axis=-1)
            indet.extend(float(k) for k in kc[np.max(res, axis=-1) > residual_tol])
            max_dev = max(max_dev, float(np.max(dev)))
            bad |= dev > tol
        if bad.any():
            failed.extend(float(k) for k in kc[bad])
            break
    return ScreenReport(w3, tuple(exponents), W, m, max_dev, failed,
                        "fail" if failed else ("pass" if len(ks) else "vacuous"),
                        sorted(set(indet)), len(ks))


def box_candidates(limit: int, m: int) -> list[tuple]:
    """All (c1, b1; c2, b2) with |entries| <= limit, writhe 2m+5 and a 2-component closure."""
    W = 2 * m + 5
    out = []
    for tup in itertools.product(range(-limit, limit + 1), repeat=4):
        if sum(tup) != W:
            continue
        w = box_word(tup, 3)
        if closure_info(w).components == 2:
            out.append(tup)
    return out


def box_screen(limit: int = 7, m_range: Iterable[int] = range(0, 6), grid: KGrid | None = None,
               tol: float = 1e-6, sectors: Sequence = ((3, 1),), threads: int = 1) -> list[ScreenReport]:
    """Screen every box parameterization; returns the passing reports in (m, tuple) order."""
    grid = grid or KGrid()
    jobs = [(m, tup) for m in m_range for tup in box_candidates(limit, m)]

    def run(job):
        m, tup = job
        return screen_braid(box_word(tup, 3), m, grid, tol, sectors, exponents=tup)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as ex:
            reports = list(ex.map(run, jobs))
    else:
        reports = [run(j) for j in jobs]
    return [r for r in reports if r.passed]


def group_by_a22(reports: Sequence[ScreenReport]) -> list[list[ScreenReport]]:
    """Partition reports into classes with identical exact a22 trace."""
    classes: dict = {}
    for r in reports:
        classes.setdefault(a22_exact(r.braid), []).append(r)
    return list(classes.values())
