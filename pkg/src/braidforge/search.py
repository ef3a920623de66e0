"""Sharded, checkpointed sweep over positive 4-strand braid words.

A word beta_+ of length 2m+5+6p is a candidate when its character
coefficients equal those of the m-th hypothetical knot after p half-twists
are split off: beta = beta_+ Delta^(-p).  Pipeline per chunk of base-3
encodings:

1. cyclic dedup (keep the least rotation) and the 4-cycle knot filter;
2. float prefilter at a few random points on the unit circle;
3. exact check of the survivors with int64 coefficient arrays;
4. a final check through :mod:`braidforge.qpoly` for anything that matched.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .braid import BraidWord, canonical_cyclic, closure_info
from .hypothetical import acoef_solve
from .qpoly import LaurentPoly, RationalFn
from .rtrep import SECTOR_DIMS, block_r, char_coeffs

STRANDS = 4
SEARCH_SECTORS = ((3, 1), (2, 1, 1), (2, 2))
MAX_LENGTH = 39  # 3^39 < 2^63 and 3^L bounds every int64 coefficient


def word_length(k: int, m: int = 0) -> int:
    return 2 * m + 5 + 12 * k


# ---------------------------------------------------------------------------
# enumeration


def _pow3(length: int) -> np.ndarray:
    return np.array([3 ** (length - 1 - i) for i in range(length)], dtype=np.int64)


def decode(codes: np.ndarray, length: int) -> np.ndarray:
    """Base-3 codes to letters in {1,2,3}; the most significant digit comes first."""
    return ((codes[:, None] // _pow3(length)[None, :]) % 3 + 1).astype(np.int8)


def encode(letters: Sequence[int]) -> int:
    e = 0
    for g in letters:
        e = 3 * e + (g - 1)
    return e


def is_canonical(codes: np.ndarray, length: int) -> np.ndarray:
    """True where the code is not larger than any of its cyclic rotations."""
    ok = np.ones(codes.shape, dtype=bool)
    for r in range(1, length):
        hi = 3 ** (length - r)
        rot = (codes % hi) * 3 ** r + codes // hi
        ok &= codes <= rot
    return ok


def is_knot(letters: np.ndarray) -> np.ndarray:
    """True where the closure of the positive 4-strand word is a single 4-cycle."""
    B, L = letters.shape
    pos = np.tile(np.arange(STRANDS, dtype=np.int8), (B, 1))
    rows = np.arange(B)
    for t in range(L):
        i = letters[:, t].astype(np.int64) - 1
        a, b = pos[rows, i].copy(), pos[rows, i + 1].copy()
        pos[rows, i], pos[rows, i + 1] = b, a
    perm = np.empty_like(pos)
    perm[rows[:, None], pos] = np.arange(STRANDS, dtype=np.int8)[None, :]
    x = np.zeros(B, dtype=np.int64)
    ok = np.ones(B, dtype=bool)
    for _ in range(STRANDS - 1):
        x = perm[rows, x]
        ok &= x != 0
    return ok


def shard_codes(length: int, shard: tuple[int, int], start: int = 0, count: int | None = None) -> np.ndarray:
    """Codes e = index + j*total for j in [start, start+count)."""
    index, total = shard
    n_shard = (3 ** length - index + total - 1) // total
    stop = n_shard if count is None else min(n_shard, start + count)
    return index + total * np.arange(start, stop, dtype=np.int64)


def shard_size(length: int, shard: tuple[int, int]) -> int:
    index, total = shard
    return (3 ** length - index + total - 1) // total


def enumerate_positive(length: int, shard: tuple[int, int] = (0, 1), dedup: bool = True,
                       chunk: int = 1 << 15) -> Iterator[BraidWord]:
    """Positive words in ascending code order restricted to one shard."""
    if length < 1 or length > MAX_LENGTH:
        raise ValueError(f"length must lie in 1..{MAX_LENGTH}")
    index, total = shard
    if not 0 <= index < total:
        raise ValueError("shard index out of range")
    n = shard_size(length, shard)
    for start in range(0, n, chunk):
        codes = shard_codes(length, shard, start, chunk)
        if dedup:
            codes = codes[is_canonical(codes, length)]
        for row in decode(codes, length):
            yield BraidWord(STRANDS, tuple(int(g) for g in row))


def _transposition(perm: tuple, i: int) -> tuple:
    p = list(perm)
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def _is_4cycle(pos: tuple) -> bool:
    perm = [0] * STRANDS
    for slot, strand in enumerate(pos):
        perm[strand] = slot
    x, n = perm[0], 1
    while x != 0:
        x, n = perm[x], n + 1
    return n == STRANDS


def reach_table(length: int) -> list[set]:
    """reach[r]: slot states that can still end as a 4-cycle with r letters left."""
    from itertools import permutations

    states = list(permutations(range(STRANDS)))
    reach = [{s for s in states if _is_4cycle(s)}]
    for _ in range(length):
        prev = reach[-1]
        reach.append({s for s in states if any(_transposition(s, i) in prev for i in range(3))})
    return reach


def enumerate_knots_dfs(length: int) -> Iterator[BraidWord]:
    """Positive knot words in code order, pruning prefixes that cannot close to a 4-cycle."""
    reach = reach_table(length)
    word: list[int] = []

    def rec(state: tuple, left: int):
        if left == 0:
            yield BraidWord(STRANDS, tuple(word))
            return
        for g in (1, 2, 3):
            nxt = _transposition(state, g - 1)
            if nxt in reach[left - 1]:
                word.append(g)
                yield from rec(nxt, left - 1)
                word.pop()

    yield from rec(tuple(range(STRANDS)), length)


# ---------------------------------------------------------------------------
# batched sector traces


def _gen_terms(Y, i: int) -> list[tuple[int, int, int, int]]:
    """(row, col, coefficient, q-exponent) entries of an integral-basis generator."""
    M = block_r(Y, i, "integral")
    out = []
    d = M.shape[0]
    for r in range(d):
        for c in range(d):
            for e, v in M[r, c].terms.items():
                if e % 2:
                    raise ValueError("integral generators have whole q powers")
                out.append((r, c, v, e // 2))
    return out


_GEN_TERMS = {Y: [_gen_terms(Y, i) for i in (1, 2, 3)] for Y in SEARCH_SECTORS}


def _numeric_gens(q: np.ndarray) -> dict:
    """Generators evaluated at the points q: {Y: (3, P, d, d)}."""
    out = {}
    for Y in SEARCH_SECTORS:
        d = SECTOR_DIMS[Y]
        G = np.zeros((3, len(q), d, d), dtype=complex)
        for g, terms in enumerate(_GEN_TERMS[Y]):
            for r, c, v, s in terms:
                G[g, :, r, c] += v * q ** s
        out[Y] = G
    return out


def float_traces(letters: np.ndarray, q: np.ndarray, gens: dict | None = None,
                 with_norms: bool = False):
    """Sector traces at points q for a batch of words: {Y: (B, P)}.

    With ``with_norms`` also returns {Y: sum of |entries| of the product}, a
    scale for the rounding error of each trace.
    """
    gens = gens if gens is not None else _numeric_gens(q)
    B, L = letters.shape
    out, norms = {}, {}
    idx = letters.astype(np.int64) - 1
    for Y, G in gens.items():
        d = G.shape[-1]
        M = np.broadcast_to(np.eye(d, dtype=complex), (B, len(q), d, d)).copy()
        for t in range(L):
            M = M @ G[idx[:, t]]
        out[Y] = np.trace(M, axis1=-2, axis2=-1)
        norms[Y] = np.abs(M).sum(axis=(-2, -1))
    return (out, norms) if with_norms else out


@dataclass(frozen=True)
class Frame:
    """Dense coefficient frame: index = exponent + offset."""

    offset: int

    @property
    def size(self) -> int:
        return 2 * self.offset + 1

    def shift(self, arr: np.ndarray, s: int) -> np.ndarray:
        out = np.zeros_like(arr)
        if s > 0:
            out[..., s:] = arr[..., :-s]
        elif s < 0:
            out[..., :s] = arr[..., -s:]
        else:
            out[...] = arr
        return out

    def from_laurent(self, p: LaurentPoly) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int64)
        for e, c in p.terms.items():
            out[e // 2 + self.offset] = c
        return out

    def to_laurent(self, arr: np.ndarray) -> LaurentPoly:
        return LaurentPoly({2 * (int(i) - self.offset): int(arr[i]) for i in np.nonzero(arr)[0]})

    def mul(self, arr: np.ndarray, p: LaurentPoly) -> np.ndarray:
        out = np.zeros_like(arr)
        for e, c in p.terms.items():
            out += c * self.shift(arr, e // 2)
        return out


def exact_traces(letters: np.ndarray, frame: Frame) -> dict:
    """Exact sector traces as int64 coefficient arrays: {Y: (B, frame.size)}."""
    B, L = letters.shape
    if L > MAX_LENGTH:
        raise OverflowError(f"words longer than {MAX_LENGTH} may overflow int64")
    out = {}
    for Y in SEARCH_SECTORS:
        terms = _GEN_TERMS[Y]
        d = 1 + max(r for r, _, _, _ in terms[0])
        M = np.zeros((B, d, d, frame.size), dtype=np.int64)
        for i in range(d):
            M[:, i, i, frame.offset] = 1
        for t in range(L):
            new = np.zeros_like(M)
            for g in (1, 2, 3):
                mask = letters[:, t] == g
                if not mask.any():
                    continue
                sub = M[mask]
                acc = np.zeros_like(sub)
                for r, c, v, s in terms[g - 1]:
                    acc[:, :, c] += v * frame.shift(sub[:, :, r], s)
                new[mask] = acc
            M = new
        out[Y] = np.einsum("biik->bk", M)
    return out


# ---------------------------------------------------------------------------
# targets


_P5 = LaurentPoly({0: 1, 4: 1, 8: 1, 12: 1, 16: 1})
_D = LaurentPoly({0: 1, 4: 1, 8: 1})
_ONE_Q2 = LaurentPoly({0: 1, 4: 1})


def _qp(n: int) -> LaurentPoly:
    return LaurentPoly.q(n)


def _eval(p: LaurentPoly, q: np.ndarray) -> np.ndarray:
    return sum(c * q ** (e // 2) for e, c in p.terms.items())


@dataclass(frozen=True)
class SearchTarget:
    """Relations for beta_+ = beta Delta^p with beta realizing the m-th candidate.

    a+_22 = a_22, a+_31 = q^(2p) a_31, a+_211 = q^(-2p) a_211, written without
    denominators:

        R1 = D a+_31 + q^(2p) (q^2 a+_22 + q^(2m+3) P - q^(11+4m) (1+q^2))
        R2 = q^(9+4m+2p) D a+_211 + (1 + q^2 - q^(2+2m) P + q^(11+4m) a+_22)
    """

    m: int = 0
    p: int = 0

    def __post_init__(self):
        if self.p % 2 or self.p < 0 or self.m < 0:
            raise ValueError("p must be a non-negative even integer and m non-negative")

    @property
    def length(self) -> int:
        return 2 * self.m + 5 + 6 * self.p

    # pieces shared by the float and exact routes: R = sum_j poly_j * a_Y_j + const
    def _relations(self):
        m, p = self.m, self.p
        c1 = _qp(2 * p) * (_qp(2 * m + 3) * _P5 - _qp(11 + 4 * m) * _ONE_Q2)
        c2 = _ONE_Q2 - _qp(2 + 2 * m) * _P5
        R1 = {(3, 1): _D, (2, 2): _qp(2 * p + 2)}, c1
        R2 = {(2, 1, 1): _qp(9 + 4 * m + 2 * p) * _D, (2, 2): _qp(11 + 4 * m)}, c2
        return [R1, R2]

    def frame_offset(self) -> int:
        return self.length + 8 * self.m + 4 * self.p + 40

    def float_residual(self, tr: dict, q: np.ndarray, norms: dict) -> np.ndarray:
        """Max scaled residual over relations and points, per word."""
        worst = np.zeros(next(iter(tr.values())).shape[0])
        for coefs, const in self._relations():
            c = _eval(const, q)
            val = np.broadcast_to(c, worst.shape + q.shape).astype(complex)
            scale = 1.0 + np.abs(val)
            for Y, poly in coefs.items():
                f = _eval(poly, q)
                val = val + f * tr[Y]
                scale = scale + np.abs(f) * norms[Y]
            worst = np.maximum(worst, np.max(np.abs(val) / scale, axis=1))
        return worst

    def exact_mask(self, tr: dict, frame: Frame) -> np.ndarray:
        ok = np.ones(next(iter(tr.values())).shape[0], dtype=bool)
        for coefs, const in self._relations():
            val = np.broadcast_to(frame.from_laurent(const), next(iter(tr.values())).shape).copy()
            for Y, poly in coefs.items():
                val += frame.mul(tr[Y], poly)
            ok &= ~val.any(axis=1)
        return ok

    def match_coeffs(self, a: dict) -> bool:
        """Exact check on RationalFn coefficients via the a22-eliminated relation plus R1."""
        q = LaurentPoly.q
        a31 = RationalFn.coerce(a[(3, 1)]) * RationalFn(q(-2 * self.p))
        a211 = RationalFn.coerce(a[(2, 1, 1)]) * RationalFn(q(2 * self.p))
        m = self.m
        elim = (RationalFn(q(9 + 4 * m) * _D) * (a211 - a31) + RationalFn(_ONE_Q2)
                - RationalFn(q(2 + 2 * m) * _P5) - RationalFn(q(12 + 6 * m) * _P5)
                + RationalFn(q(20 + 8 * m) * _ONE_Q2))
        if not elim.is_zero():
            return False
        coefs, const = self._relations()[0]
        r1 = RationalFn(const)
        for Y, poly in coefs.items():
            r1 = r1 + RationalFn(poly) * RationalFn.coerce(a[Y])
        return r1.is_zero()

    def match_coeffs_direct(self, a: dict) -> bool:
        """Cross-check: solve the candidate from a+_22 and compare the shifted traces."""
        c = acoef_solve(self.m, a[(2, 2)])
        q = LaurentPoly.q
        return (RationalFn.coerce(a[(3, 1)]) == c[(3, 1)] * RationalFn(q(2 * self.p))
                and RationalFn.coerce(a[(2, 1, 1)]) == c[(2, 1, 1)] * RationalFn(q(-2 * self.p)))


@dataclass(frozen=True)
class PlantedTarget:
    """Matches exactly the words whose sector traces equal those of ``word``."""

    word: BraidWord
    traces: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.traces:
            c = char_coeffs(self.word)
            object.__setattr__(self, "traces", {Y: c[Y].to_laurent() for Y in SEARCH_SECTORS})

    @property
    def length(self) -> int:
        return len(self.word)

    def frame_offset(self) -> int:
        return self.length + 8

    def float_residual(self, tr: dict, q: np.ndarray, norms: dict) -> np.ndarray:
        worst = np.zeros(next(iter(tr.values())).shape[0])
        for Y, t in self.traces.items():
            ref = _eval(t, q)
            scale = 1.0 + np.abs(ref) + norms[Y]
            worst = np.maximum(worst, np.max(np.abs(tr[Y] - ref) / scale, axis=1))
        return worst

    def exact_mask(self, tr: dict, frame: Frame) -> np.ndarray:
        ok = np.ones(next(iter(tr.values())).shape[0], dtype=bool)
        for Y, t in self.traces.items():
            ok &= (tr[Y] == frame.from_laurent(t)[None, :]).all(axis=1)
        return ok

    def match_coeffs(self, a: dict) -> bool:
        return all(RationalFn.coerce(a[Y]) == RationalFn(t) for Y, t in self.traces.items())

    match_coeffs_direct = match_coeffs


def match_word(w: BraidWord, t) -> bool:
    """Exact verdict for one positive knot word (qpoly route)."""
    if w.strands != STRANDS or any(g < 0 for g in w.letters):
        raise ValueError("match_word takes positive 4-strand words")
    info = closure_info(w)
    if not info.is_knot:
        raise ValueError(f"closure has {info.components} components")
    if len(w) != t.length:
        return False
    c = char_coeffs(w)
    return t.match_coeffs(c.a)


# ---------------------------------------------------------------------------
# checkpoints and the sweep


class CheckpointError(OSError):
    pass


def _ckpt_path(directory: Path, length: int, shard: tuple[int, int]) -> Path:
    return directory / f"L{length}-shard{shard[0]}-of{shard[1]}.jsonl"


def _atomic_append(path: Path, record: dict, retries: int = 3) -> None:
    line = json.dumps(record, sort_keys=True)
    last = None
    for _ in range(retries):
        try:
            old = path.read_text() if path.exists() else ""
            tmp = path.with_suffix(path.suffix + ".tmp")
            tmp.write_text(old + line + "\n")
            os.replace(tmp, path)
            return
        except OSError as exc:
            last = exc
            time.sleep(0.05)
    raise CheckpointError(f"could not write checkpoint {path}: {last}")


def load_checkpoint(path: Path) -> dict | None:
    if not path.exists():
        return None
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    return json.loads(lines[-1]) if lines else None


@dataclass
class ShardState:
    shard: tuple
    length: int
    cursor: int = 0
    examined: int = 0
    canonical: int = 0
    knots: int = 0
    prefiltered: int = 0
    exact_checked: int = 0
    matches: list = field(default_factory=list)
    seconds: dict = field(default_factory=lambda: {"enumerate": 0.0, "prefilter": 0.0, "exact": 0.0})
    done: bool = False

    def record(self) -> dict:
        return {
            "shard": list(self.shard), "length": self.length, "cursor": self.cursor,
            "examined": self.examined, "canonical": self.canonical, "knots": self.knots,
            "prefiltered": self.prefiltered, "exact_checked": self.exact_checked,
            "matches": self.matches, "seconds": self.seconds, "done": self.done,
            "wall": time.time(),
        }

    @classmethod
    def from_record(cls, rec: dict) -> ShardState:
        return cls(tuple(rec["shard"]), rec["length"], rec["cursor"], rec["examined"], rec["canonical"],
                   rec["knots"], rec["prefiltered"], rec["exact_checked"], rec["matches"],
                   rec["seconds"], rec["done"])


def sample_points(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.exp(1j * rng.uniform(0.1, 2 * np.pi - 0.1, n))


def process_chunk(codes: np.ndarray, length: int, target, q: np.ndarray, gens: dict,
                  frame: Frame, tol: float = 1e-8, state: ShardState | None = None,
                  prefilter: bool = True) -> list[list[int]]:
    """Run dedup, knot filter, prefilter and exact check on one chunk of codes."""
    t0 = time.perf_counter()
    codes = codes[is_canonical(codes, length)]
    letters = decode(codes, length)
    knot = is_knot(letters)
    letters = letters[knot]
    t1 = time.perf_counter()
    if prefilter and len(letters):
        tr, norms = float_traces(letters, q, gens, with_norms=True)
        res = target.float_residual(tr, q, norms)
        cand = letters[res < tol]
    else:
        cand = letters
    t2 = time.perf_counter()
    found = []
    if len(cand):
        ok = target.exact_mask(exact_traces(cand, frame), frame)
        for row in cand[ok]:
            w = BraidWord(STRANDS, tuple(int(g) for g in row))
            if match_word(w, target):
                found.append(list(w.letters))
    t3 = time.perf_counter()
    if state is not None:
        state.canonical += len(codes)
        state.knots += len(letters)
        state.prefiltered += len(cand)
        state.exact_checked += len(cand)
        state.matches.extend(found)
        state.seconds["enumerate"] += t1 - t0
        state.seconds["prefilter"] += t2 - t1
        state.seconds["exact"] += t3 - t2
    return found


def run_shard(length: int, shard: tuple[int, int], target, checkpoint_dir: Path | None = None,
              resume: bool = False, limit: int | None = None, chunk: int = 1 << 14,
              seed: int = 0, n_points: int = 4, tol: float = 1e-8) -> ShardState:
    """Sweep one shard; ``limit`` caps the words examined in this call (for staged runs)."""
    path = _ckpt_path(Path(checkpoint_dir), length, shard) if checkpoint_dir else None
    state = None
    if resume and path is not None:
        rec = load_checkpoint(path)
        if rec is not None:
            state = ShardState.from_record(rec)
    if state is None:
        state = ShardState(tuple(shard), length)
        if path is not None and path.exists():
            path.unlink()
    q = sample_points(n_points, seed)
    gens = _numeric_gens(q)
    frame = Frame(target.frame_offset())
    n = shard_size(length, shard)
    budget = n if limit is None else limit
    while state.cursor < n and budget > 0:
        step = min(chunk, budget, n - state.cursor)
        codes = shard_codes(length, shard, state.cursor, step)
        process_chunk(codes, length, target, q, gens, frame, tol, state)
        state.cursor += step
        state.examined += step
        budget -= step
        state.done = state.cursor >= n
        if path is not None:
            _atomic_append(path, state.record())
    state.done = state.cursor >= n
    return state


def _run_shard_job(args):
    return run_shard(*args[:3], **args[3])


def run_search(k: int = 0, shards: int = 1, checkpoint_dir: str | Path | None = None,
               resume: bool = False, m: int = 0, target=None, limit: int | None = None,
               chunk: int = 1 << 14, threads: int = 1, seed: int = 0, n_points: int = 4,
               tol: float = 1e-8) -> dict:
    """Full sweep over all shards; returns a JSON-able report."""
    if k < 0 or shards < 1:
        raise ValueError("k must be non-negative and shards positive")
    target = target or SearchTarget(m, 2 * k)
    length = target.length
    if checkpoint_dir is not None:
        Path(checkpoint_dir).mkdir(parents=True, exist_ok=True)
    opts = dict(checkpoint_dir=checkpoint_dir, resume=resume, limit=limit, chunk=chunk,
                seed=seed, n_points=n_points, tol=tol)
    jobs = [(length, (s, shards), target, opts) for s in range(shards)]
    t0 = time.perf_counter()
    if threads > 1 and shards > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(min(threads, shards)) as ex:
            states = list(ex.map(_run_shard_job, jobs))
    else:
        states = [_run_shard_job(j) for j in jobs]
    wall = time.perf_counter() - t0
    return report(states, wall, k=k, m=target.m if hasattr(target, "m") else None)


def report(states: Sequence[ShardState], wall: float, **extra) -> dict:
    examined = sum(s.examined for s in states)
    canonical = sum(s.canonical for s in states)
    matches = sorted({tuple(mt) for s in states for mt in s.matches})
    stage = {key: sum(s.seconds[key] for s in states) for key in ("enumerate", "prefilter", "exact")}
    return {
        **extra,
        "length": states[0].length if states else None,
        "shards": len(states),
        "complete": all(s.done for s in states),
        "examined": examined,
        "canonical": canonical,
        "knots": sum(s.knots for s in states),
        "prefilter_survivors": sum(s.prefiltered for s in states),
        "exact_checked": sum(s.exact_checked for s in states),
        "matches": [list(mt) for mt in matches],
        "dedup_ratio": canonical / examined if examined else 0.0,
        "words_per_sec": examined / wall if wall > 0 else float("inf"),
        "stage_seconds": stage,
        "wall_seconds": wall,
    }


def deterministic_view(rep: dict) -> dict:
    """Report fields that do not depend on timing."""
    keys = ("length", "shards", "complete", "examined", "canonical", "knots", "matches")
    return {k: rep[k] for k in keys if k in rep}
