"""JSON round-trip for polynomials.

Format::

    {"vars": ["q", "A"], "half_units": true,
     "terms": [{"q": <int>, "A": <int>, "c": "<decimal string>"}, ...]}

Exponents are half-units.  Terms are sorted by (A, q) so output is stable.
Rational functions are written as {"num": ..., "den": ...}.
"""

from __future__ import annotations

import json

from .bilaurent import BiLaurent
from .laurent import LaurentPoly
from .rational import RationalFn


def poly_to_obj(p) -> dict:
    if isinstance(p, RationalFn):
        return {"num": poly_to_obj(p.num), "den": poly_to_obj(p.den)}
    if isinstance(p, LaurentPoly):
        p = BiLaurent.from_laurent(p)
    terms = sorted(p.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return {
        "vars": ["q", "A"],
        "half_units": True,
        "terms": [{"q": eq, "A": eA, "c": str(c)} for (eq, eA), c in terms],
    }


def obj_to_poly(obj: dict):
    if "num" in obj:
        return RationalFn(obj_to_poly(obj["num"]), obj_to_poly(obj["den"]))
    if obj.get("vars") != ["q", "A"] or obj.get("half_units") is not True:
        raise ValueError("unsupported polynomial header")
    return BiLaurent({(int(t["q"]), int(t["A"])): int(t["c"]) for t in obj["terms"]})


def dumps(p, **kw) -> str:
    return json.dumps(poly_to_obj(p), **kw)


def loads(text: str):
    return obj_to_poly(json.loads(text))
