"""Exact dynamic-programming decoders for projective trees.

Every decoder runs its deduction system over a semiring: ``(max, +)`` for
the best tree (``mode="viterbi"``) or ``(+, *)`` over unit weights for the
number of derivations (``mode="count"``).  Backpointers are not stored;
recovery re-derives each item on the best path and takes the first rule and
smallest split that reproduces its value exactly.
"""

from __future__ import annotations

from ..core import (
    EISNER_1O,
    EISNER_2O_HEADSPLIT,
    EISNER_HEADSPLIT,
    EISNER_SATTA_SPAN,
    ScoreSet,
    normalize_algorithm,
)
from .base import COUNT, VITERBI, ChartError, DecodeResult
from .eisner import decode_eisner_1o
from .eisner_satta import decode_eisner_satta_span
from .headsplit import decode_eisner_2o_headsplit, decode_eisner_headsplit

DECODERS = {
    EISNER_1O: decode_eisner_1o,
    EISNER_SATTA_SPAN: decode_eisner_satta_span,
    EISNER_HEADSPLIT: decode_eisner_headsplit,
    EISNER_2O_HEADSPLIT: decode_eisner_2o_headsplit,
}


def decode(scores: ScoreSet, algorithm: str, single_root: bool = True) -> DecodeResult:
    return DECODERS[normalize_algorithm(algorithm)](scores, single_root=single_root)


def count_trees(algorithm: str, n: int, single_root: bool = True) -> int:
    """Number of derivations the algorithm's deduction system admits for ``n`` words."""
    if n < 1:
        raise ValueError("n must be at least 1")
    result = DECODERS[normalize_algorithm(algorithm)](None, n=n, single_root=single_root,
                                                      mode=COUNT)
    return result.count


__all__ = [
    "COUNT", "ChartError", "DECODERS", "DecodeResult", "VITERBI", "count_trees", "decode",
    "decode_eisner_1o", "decode_eisner_2o_headsplit", "decode_eisner_headsplit",
    "decode_eisner_satta_span",
]
