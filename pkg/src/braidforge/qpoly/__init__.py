"""Exact polynomial and rational-function arithmetic in q and (q, A)."""

from .bilaurent import BiLaurent
from .gcd import bilaurent_gcd
from .laurent import LaurentPoly, NonDivisibleError, quantum_bracket
from .ops import a_span, divide_exact, eval_complex, substitute
from .qnumbers import q_factorial, quantum_int, rising_q_factorial
from .rational import PoleError, RationalFn
from .schur import diagrams_of_size, hook_lengths, schur_normalized, schur_special, transpose

__all__ = [
    "BiLaurent",
    "LaurentPoly",
    "NonDivisibleError",
    "PoleError",
    "RationalFn",
    "a_span",
    "bilaurent_gcd",
    "diagrams_of_size",
    "divide_exact",
    "eval_complex",
    "hook_lengths",
    "q_factorial",
    "quantum_bracket",
    "quantum_int",
    "rising_q_factorial",
    "schur_normalized",
    "schur_special",
    "substitute",
    "transpose",
]
