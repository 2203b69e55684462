from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Optional

from ..core import ProjectiveTree, ScoreSet, normalize_algorithm, score_components_required

VITERBI = "viterbi"
COUNT = "count"


class Semiring(NamedTuple):
    plus: Callable[[Any, Any], Any]
    times: Callable[[Any, Any], Any]
    zero: Any
    one: Any


# (max, +) for the best tree, (+, *) over unit weights for derivation counts
MAX_PLUS = Semiring(max, operator.add, float("-inf"), 0.0)
SUM_PRODUCT = Semiring(operator.add, operator.mul, 0, 1)


class ChartError(RuntimeError):
    """Backpointer recovery failed to re-derive a chart value."""


@dataclass(frozen=True)
class DecodeResult:
    tree: Optional[ProjectiveTree]
    score: float
    mode: str = VITERBI
    count: Optional[int] = None


def prepare(scores: Optional[ScoreSet], algorithm: str, mode: str, n: Optional[int]):
    """Return ``(n, semiring, scores)`` for a decode call.

    In counting mode every weight is the integer 1, so ``scores`` may be
    omitted and only ``n`` is needed.
    """
    algorithm = normalize_algorithm(algorithm)
    if mode == VITERBI:
        if scores is None:
            raise ValueError("viterbi decoding needs a ScoreSet")
        scores.require(algorithm)
        if n is not None and n != scores.n:
            raise ValueError(f"n={n} does not match ScoreSet.n={scores.n}")
        n = scores.n
        sr = MAX_PLUS
    elif mode == COUNT:
        if n is None:
            if scores is None:
                raise ValueError("counting mode needs n or a ScoreSet")
            n = scores.n
        scores = ScoreSet.ones(n, score_components_required(algorithm))
        sr = SUM_PRODUCT
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    return n, sr, scores


def first_split(candidates, target):
    """First ``k`` whose recomputed value equals ``target`` exactly."""
    for k, value in candidates:
        if value == target:
            return k
    raise ChartError(f"no derivation reproduces chart value {target!r}")
