"""Substitution rules, A-span, exact division and numeric evaluation."""

from __future__ import annotations

from .bilaurent import BiLaurent
from .laurent import LaurentPoly
from .rational import PoleError, RationalFn

RULES = ("A=q^N", "A=1", "A=q^2", "q=1/q", "A=1/A")


def substitute(p, rule: str, N: int | None = None):
    """Apply one of the specializations in RULES to a BiLaurent or RationalFn.

    ``A=q^N`` needs N.  A-specializations of a BiLaurent return a
    LaurentPoly; of a RationalFn they return a q-only RationalFn.
    """
    if rule not in RULES:
        raise ValueError(f"unknown substitution rule {rule!r}; expected one of {RULES}")
    if isinstance(p, LaurentPoly):
        p = BiLaurent.from_laurent(p)
    if rule == "q=1/q":
        return p.invert_q()
    if rule == "A=1/A":
        return p.invert_A()
    power = {"A=1": 0, "A=q^2": 2}.get(rule, N)
    if power is None:
        raise ValueError("rule A=q^N needs an integer N")
    if isinstance(p, RationalFn):
        try:
            return p.subs_A_qpow(power)
        except PoleError as exc:
            raise PoleError(f"denominator vanishes under rule {rule} (N={power})") from exc
    return p.subs_A_qpow(power)


def a_span(p: BiLaurent) -> int:
    return BiLaurent.coerce(p).a_span()


def divide_exact(num, den) -> BiLaurent:
    """num / den when den divides num; NonDivisibleError carries the remainder."""
    return BiLaurent.coerce(num).exact_div(BiLaurent.coerce(den))


def eval_complex(f, q0: complex, A0: complex | None = None, eps: float = 1e-12) -> complex:
    if isinstance(f, LaurentPoly):
        return f.eval_complex(q0)
    if isinstance(f, BiLaurent):
        if A0 is None:
            if not f.is_q_only():
                raise ValueError("A value required")
            A0 = 1.0
        return f.eval_complex(q0, A0)
    if isinstance(f, RationalFn):
        return f.eval_complex(q0, A0, eps)
    raise TypeError(f"cannot evaluate {type(f).__name__}")
