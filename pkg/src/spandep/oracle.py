"""Exhaustive enumeration of projective trees, the reference for every decoder."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import (
    EISNER_2O_HEADSPLIT,
    EISNER_HEADSPLIT,
    EISNER_SATTA_SPAN,
    ProjectiveTree,
    ScoreSet,
    normalize_algorithm,
)
from .decoders.base import DecodeResult
from .trees import decompose

MAX_N = 10


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"enumeration is limited to 1 <= n <= {MAX_N}, got n={n}")


@lru_cache(maxsize=None)
def _subtrees(a: int, b: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """All projective trees over words a..b as (root, ((dep, head), ...))."""
    out = []
    for h in range(a, b + 1):
        for left in _sequences(a, h - 1):
            for right in _sequences(h + 1, b):
                arcs = []
                for root, sub in left + right:
                    arcs.append((root, h))
                    arcs.extend(sub)
                out.append((h, tuple(arcs)))
    return tuple(out)


@lru_cache(maxsize=None)
def _sequences(a: int, b: int) -> tuple[tuple, ...]:
    """Ways to cover a..b by consecutive subtrees (each a child of one outside head)."""
    if a > b:
        return ((),)
    out = []
    for m in range(a, b + 1):
        for first in _subtrees(a, m):
            for rest in _sequences(m + 1, b):
                out.append((first,) + rest)
    return tuple(out)


def enumerate_projective(n: int, single_root: bool = True) -> Iterator[ProjectiveTree]:
    _check_n(n)
    groups = [(t,) for t in _subtrees(1, n)] if single_root else _sequences(1, n)
    for group in groups:
        heads = [0] * n
        for root, arcs in group:
            heads[root - 1] = 0
            for d, h in arcs:
                heads[d - 1] = h
        yield ProjectiveTree(tuple(heads))


def count_by_recurrence(n: int, single_root: bool = True) -> int:
    """Tree counts from a split recurrence, independent of any chart.

    ``seq[m]`` counts covers of m consecutive words by sibling subtrees and
    ``tree[m]`` counts subtrees over m words: a root with seq-covers on each side.
    """
    tree = [0] * (n + 1)
    seq = [1] + [0] * n
    for m in range(1, n + 1):
        tree[m] = sum(seq[p] * seq[m - 1 - p] for p in range(m))
        seq[m] = sum(tree[k] * seq[m - k] for k in range(1, m + 1))
    return tree[n] if single_root else seq[n]


class _Index:
    """Unit indices of every enumerated tree, for batched scoring."""

    def __init__(self, n: int, single_root: bool):
        self.trees = list(enumerate_projective(n, single_root))
        size = n + 1
        decs = [decompose(t) for t in self.trees]
        self.arc = np.array([[h * size + d for h, d in sorted(dec.arcs, key=lambda a: a[1])]
                             for dec in decs])
        self.span = np.array([[(h * size + l) * size + r for l, r, h in dec.spans]
                              for dec in decs])
        self.left = np.array([[h * size + l for l, r, h in dec.spans] for dec in decs])
        self.right = np.array([[h * size + r for l, r, h in dec.spans] for dec in decs])
        # sibling lists are ragged; pad with one past the end of the flat cube
        pad = size ** 3
        width = max(1, max(len(dec.sibling_pairs) for dec in decs))
        sib = np.full((len(decs), width), pad)
        for t, dec in enumerate(decs):
            for m, (h, a, b) in enumerate(sorted(dec.sibling_pairs)):
                sib[t, m] = (h * size + a) * size + b
        self.sib = sib


@lru_cache(maxsize=16)
def _index(n: int, single_root: bool) -> _Index:
    return _Index(n, single_root)


def all_tree_scores(scores: ScoreSet, model: str, single_root: bool = True):
    """Score of every enumerated tree under ``model``; returns (trees, scores)."""
    model = normalize_algorithm(model)
    _check_n(scores.n)
    scores.require(model)
    idx = _index(scores.n, single_root)
    total = scores.arc.ravel()[idx.arc].sum(axis=1)
    if model == EISNER_SATTA_SPAN:
        total = total + scores.span.ravel()[idx.span].sum(axis=1)
    elif model in (EISNER_HEADSPLIT, EISNER_2O_HEADSPLIT):
        total = total + scores.left.ravel()[idx.left].sum(axis=1)
        total = total + scores.right.ravel()[idx.right].sum(axis=1)
        if model == EISNER_2O_HEADSPLIT:
            flat = np.append(scores.sib.ravel(), 0.0)
            total = total + flat[idx.sib].sum(axis=1)
    return idx.trees, total


def brute_force_argmax(scores: ScoreSet, model: str, single_root: bool = True) -> DecodeResult:
    trees, totals = all_tree_scores(scores, model, single_root)
    best = int(np.argmax(totals))
    return DecodeResult(trees[best], float(totals[best]))


__all__ = [
    "MAX_N", "all_tree_scores", "brute_force_argmax", "count_by_recurrence",
    "enumerate_projective",
]
