"""Decode-time benchmarks and empirical complexity exponents."""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import EISNER_SATTA_SPAN, ScoreSet, normalize_algorithm, score_components_required
from .decoders import decode

DEFAULT_LENGTHS = (20, 40, 80, 160, 320)
SATTA_LENGTHS = (10, 20, 40, 80)
COLUMNS = ("algorithm", "n", "repeats", "mean_s", "min_s")


def default_lengths(algorithm: str) -> tuple[int, ...]:
    return SATTA_LENGTHS if normalize_algorithm(algorithm) == EISNER_SATTA_SPAN else DEFAULT_LENGTHS


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    n: int
    repeats: int
    mean: float
    best: float


@dataclass(frozen=True)
class BenchResult:
    rows: tuple[BenchRow, ...]
    slope: float

    def table(self) -> str:
        lines = ["\t".join(COLUMNS)]
        for r in self.rows:
            lines.append(f"{r.algorithm}\t{r.n}\t{r.repeats}\t{r.mean:.6f}\t{r.best:.6f}")
        lines.append(f"# log-log slope (fit on min_s): {self.slope:.3f}")
        return "\n".join(lines)


def fit_slope(lengths: Sequence[int], times: Sequence[float]) -> float:
    """Least-squares exponent of ``time ~ c * n**k``."""
    if len(lengths) < 2:
        raise ValueError("need at least two lengths to fit a slope")
    return float(np.polyfit(np.log(lengths), np.log(times), 1)[0])


def run(algorithm: str, lengths: Sequence[int] | None = None, repeats: int = 3,
        seed: int = 0, single_root: bool = True, min_time: float = 1.0) -> BenchResult:
    """Time ``decode`` on random scores.

    Each length gets one untimed warm-up call, then at least ``repeats``
    timed calls, continuing until ``min_time`` seconds have been spent on
    it.  The slope is fitted on the fastest call per length, which is far
    less sensitive to scheduler noise than the mean.  The garbage collector
    is paused while timing.
    """
    algorithm = normalize_algorithm(algorithm)
    lengths = tuple(lengths or default_lengths(algorithm))
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    rng = np.random.default_rng(seed)
    comps = score_components_required(algorithm)
    rows = []
    enabled = gc.isenabled()
    try:
        for n in lengths:
            scores = ScoreSet.random(n, rng, components=comps)
            decode(scores, algorithm, single_root)
            gc.collect()
            gc.disable()
            times: list[float] = []
            while len(times) < repeats or sum(times) < min_time:
                t0 = time.perf_counter()
                decode(scores, algorithm, single_root)
                times.append(time.perf_counter() - t0)
            if enabled:
                gc.enable()
            rows.append(BenchRow(algorithm, n, len(times), float(np.mean(times)), min(times)))
    finally:
        if enabled:
            gc.enable()
    return BenchResult(tuple(rows), fit_slope(lengths, [r.best for r in rows]))


__all__ = ["BenchResult", "BenchRow", "COLUMNS", "DEFAULT_LENGTHS", "SATTA_LENGTHS",
           "default_lengths", "fit_slope", "run"]
