"""Braid words, closures and the half-twist.

Words are never simplified with braid relations; any equivalence question
goes through a representation instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Signed generator indices on ``strands`` strands (g>0: sigma_g, g<0: inverse)."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise ValueError(f"generator {g} out of range for {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """perm[i] is the bottom position reached by the strand starting at i."""
        pos = list(range(self.strands))  # pos[slot] = strand currently in slot
        for g in self.letters:
            i = abs(g) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for slot, strand in enumerate(pos):
            perm[strand] = slot
        return tuple(perm)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}

    @classmethod
    def from_json(cls, obj: dict) -> BraidWord:
        return cls(int(obj["strands"]), tuple(obj["letters"]))

    def __str__(self):
        return f"B{self.strands}[{','.join(map(str, self.letters))}]"


@dataclass(frozen=True)
class ClosureInfo:
    components: int
    permutation_cycles: list = field(default_factory=list)

    @property
    def is_knot(self) -> bool:
        return self.components == 1


_TUPLE_RE = re.compile(r"^\(\s*(-?\d+\s*([,;]\s*-?\d+\s*)*)\)$")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse "1,1,-2" / "1 1 -2" letter lists or exponent tuples "(c1,b1;c2,b2)".

    In tuple notation the k-th exponent belongs to generator
    ((k mod (strands-1)) + 1); semicolons only group blocks visually.
    """
    s = text.strip()
    if not s:
        return BraidWord(strands, ())
    if s.startswith("("):
        m = _TUPLE_RE.match(s)
        if not m:
            raise BraidParseError(f"malformed tuple notation: {text!r}")
        if strands < 2:
            raise BraidParseError("tuple notation needs at least 2 strands")
        exps = [int(x) for x in re.split(r"[,;]", m.group(1))]
        letters = []
        for k, e in enumerate(exps):
            gen = k % (strands - 1) + 1
            letters.extend([gen if e > 0 else -gen] * abs(e))
        return BraidWord(strands, tuple(letters))
    parts = [p for p in re.split(r"[,\s]+", s) if p]
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise BraidParseError(f"malformed letter list: {text!r}") from exc
    try:
        return BraidWord(strands, letters)
    except ValueError as exc:
        raise BraidParseError(str(exc)) from exc


def writhe(w: BraidWord) -> int:
    return w.writhe


def permutation_cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc, i = [], start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        cycles.append(cyc)
    return cycles


def closure_info(w: BraidWord) -> ClosureInfo:
    cycles = permutation_cycles(w.permutation())
    return ClosureInfo(len(cycles), cycles)


def delta(strands: int) -> BraidWord:
    """Positive half-twist s1..s_{n-1} s1..s_{n-2} ... s1."""
    letters = [g for top in range(strands - 1, 0, -1) for g in range(1, top + 1)]
    return BraidWord(strands, tuple(letters))


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise ValueError(f"strand mismatch: {a.strands} vs {b.strands}")
    return BraidWord(a.strands, a.letters + b.letters)


def power(w: BraidWord, k: int) -> BraidWord:
    base = w if k >= 0 else w.inverse()
    return BraidWord(w.strands, base.letters * abs(k))


def project_sigma3_to_sigma1(w: BraidWord) -> BraidWord:
    """Replace every +-3 letter by +-1 and re-declare the word on 3 strands."""
    if w.strands != 4:
        raise ValueError("projection is defined for 4-strand words")
    return BraidWord(3, tuple((1 if g > 0 else -1) if abs(g) == 3 else g for g in w.letters))


def canonical_cyclic(w: BraidWord) -> BraidWord:
    """Lexicographically least cyclic rotation."""
    L = w.letters
    if not L:
        return w
    best = min(L[i:] + L[:i] for i in range(len(L)))
    return BraidWord(w.strands, best)


def box_word(exponents: Iterable[int], strands: int = 3) -> BraidWord:
    """Word with alternating generator blocks s1^e0 s2^e1 s1^e2 ... (tuple notation)."""
    text = "(" + ",".join(str(int(e)) for e in exponents) + ")"
    return parse_braid(text, strands)
