"""Greatest common divisors of bivariate Laurent polynomials.

A BiLaurent is shifted to an ordinary polynomial in s = q^(1/2) and
t = A^(1/2), then viewed as a polynomial in t whose coefficients are dense
integer polynomials in s.  The gcd uses content / primitive-part recursion
with a primitive pseudo-remainder sequence at both levels.
"""

from __future__ import annotations

from math import gcd as igcd

from .bilaurent import BiLaurent

# ---------------------------------------------------------------------------
# dense univariate integer polynomials, lowest degree first

UPoly = list  # list[int]


def u_trim(a: UPoly) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def u_add(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return u_trim(out)


def u_sub(a: UPoly, b: UPoly) -> UPoly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return u_trim(out)


def u_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return u_trim(out)


def u_scale(a: UPoly, k: int) -> UPoly:
    return u_trim([c * k for c in a]) if k else []


def u_content(a: UPoly) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
    return g


def u_divexact_int(a: UPoly, k: int) -> UPoly:
    return [c // k for c in a]


def u_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly] | None:
    """Division over Z; returns None when a leading coefficient fails to divide."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        return [], u_trim(a)
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            return None
        quot[i - db] = qc
        for j, y in enumerate(b):
            a[i - db + j] -= qc * y
    return u_trim(quot), u_trim(a[:db])


def u_divexact(a: UPoly, b: UPoly) -> UPoly:
    res = u_divmod(a, b)
    if res is None or res[1]:
        raise ArithmeticError("inexact univariate division")
    return res[0]


def u_pseudo_rem(a: UPoly, b: UPoly) -> UPoly:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        u_trim(a)
    return a


def u_primitive(a: UPoly) -> UPoly:
    if not a:
        return []
    c = u_content(a)
    if a[-1] < 0:
        c = -c
    return u_divexact_int(a, c)


def u_gcd(a: UPoly, b: UPoly) -> UPoly:
    """gcd over Z[s], normalized to a positive leading coefficient."""
    if not a:
        return u_scale(u_primitive(b), u_content(b)) if b else []
    if not b:
        return u_scale(u_primitive(a), u_content(a))
    c = igcd(u_content(a), u_content(b))
    a, b = u_primitive(a), u_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = u_pseudo_rem(a, b)
        a, b = b, u_primitive(r)
    return u_scale(u_primitive(a), c)


# ---------------------------------------------------------------------------
# polynomials in t over Z[s]: list of UPoly, lowest t-degree first

BPoly = list  # list[UPoly]


def b_trim(a: BPoly) -> BPoly:
    while a and not a[-1]:
        a.pop()
    return a


def b_content(a: BPoly) -> UPoly:
    g: UPoly = []
    for c in a:
        if c:
            g = u_gcd(g, c) if g else u_scale(u_primitive(c), u_content(c))
            if len(g) == 1 and abs(g[0]) == 1:
                return [1]
    if g and g[-1] < 0:
        g = u_scale(g, -1)
    return g


def b_div_content(a: BPoly, c: UPoly) -> BPoly:
    return [u_divexact(x, c) if x else [] for x in a]


def b_pseudo_rem(a: BPoly, b: BPoly) -> BPoly:
    a = [list(x) for x in a]
    db, lb = len(b) - 1, b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [u_mul(x, lb) for x in a]
        for j, y in enumerate(b):
            a[shift + j] = u_sub(a[shift + j], u_mul(c, y))
        b_trim(a)
    return a


def b_primitive(a: BPoly) -> BPoly:
    c = b_content(a)
    out = b_div_content(a, c)
    if out and out[-1] and out[-1][-1] < 0:
        out = [u_scale(x, -1) for x in out]
    return out


def b_gcd(a: BPoly, b: BPoly) -> BPoly:
    ca, cb = b_content(a), b_content(b)
    cg = u_gcd(ca, cb)
    a, b = b_primitive(a), b_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = b_pseudo_rem(a, b)
        if not r:
            break
        a, b = b, b_primitive(r)
    else:
        # b is a nonzero constant in t: the primitive gcd is 1
        if b:
            return [cg]
    g = b_primitive(b)
    return [u_mul(x, cg) if x else [] for x in g]


# ---------------------------------------------------------------------------
# conversion to and from BiLaurent


def to_bpoly(p: BiLaurent) -> tuple[BPoly, int, int]:
    """Shift p to a polynomial; returns (poly, q-shift, A-shift) in half-units."""
    mq = min(k[0] for k in p.terms)
    mA = min(k[1] for k in p.terms)
    deg_t = max(k[1] for k in p.terms) - mA
    out: BPoly = [[] for _ in range(deg_t + 1)]
    for (eq, eA), c in p.terms.items():
        row = out[eA - mA]
        i = eq - mq
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] += c
    return [u_trim(r) for r in out], mq, mA


def from_bpoly(a: BPoly, mq: int = 0, mA: int = 0) -> BiLaurent:
    terms = {}
    for j, row in enumerate(a):
        for i, c in enumerate(row):
            if c:
                terms[(i + mq, j + mA)] = c
    return BiLaurent(terms)


def bilaurent_gcd(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    """gcd up to units; monomial factors are ignored (they are units here)."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    pa, _, _ = to_bpoly(a)
    pb, _, _ = to_bpoly(b)
    return from_bpoly(b_gcd(pa, pb))
