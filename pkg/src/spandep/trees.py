"""Headed spans, sibling pairs and model scores of a tree."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EISNER_1O,
    EISNER_2O_HEADSPLIT,
    EISNER_HEADSPLIT,
    EISNER_SATTA_SPAN,
    HeadedSpan,
    ProjectiveTree,
    ScoreSet,
    normalize_algorithm,
    require_valid,
)


@dataclass(frozen=True)
class TreeDecomposition:
    arcs: frozenset[tuple[int, int]]
    spans: tuple[HeadedSpan, ...]
    sibling_pairs: frozenset[tuple[int, int, int]]


def extract_headed_spans(tree: ProjectiveTree, single_root: bool = False) -> list[HeadedSpan]:
    """One ``(l, r, h)`` per word: the fencepost interval its subtree covers.

    The tree is validated first (``single_root=False`` accepts both root
    modes; pass ``True`` to insist on a single root).
    """
    require_valid(tree, single_root=single_root)
    n = tree.n
    lo = list(range(n + 1))
    hi = list(range(n + 1))
    # propagate extents bottom-up: deepest words first
    for d in sorted(range(1, n + 1), key=_depths(tree).__getitem__, reverse=True):
        h = tree.heads[d - 1]
        if h:
            lo[h] = min(lo[h], lo[d])
            hi[h] = max(hi[h], hi[d])
    return [HeadedSpan(lo[i] - 1, hi[i], i) for i in range(1, n + 1)]


def _depths(tree: ProjectiveTree) -> list[int]:
    depth = [0] * (tree.n + 1)
    for d in range(1, tree.n + 1):
        k, node = 0, d
        while node:
            node = tree.heads[node - 1]
            k += 1
        depth[d] = k
    return depth


def extract_sibling_pairs(tree: ProjectiveTree) -> set[tuple[int, int, int]]:
    """Adjacent same-side modifier pairs as ``(head, inner, outer)``."""
    pairs = set()
    for h, kids in enumerate(tree.children()):
        left = [c for c in kids if c < h][::-1]
        right = [c for c in kids if c > h]
        for side in (left, right):
            pairs.update((h, a, b) for a, b in zip(side, side[1:]))
    return pairs


def decompose(tree: ProjectiveTree) -> TreeDecomposition:
    return TreeDecomposition(
        arcs=frozenset(tree.arcs()),
        spans=tuple(extract_headed_spans(tree)),
        sibling_pairs=frozenset(extract_sibling_pairs(tree)),
    )


def tree_score(tree: ProjectiveTree, scores: ScoreSet, model: str) -> float:
    model = normalize_algorithm(model)
    scores.require(model)
    dec = decompose(tree)
    total = sum(scores.arc[h, d] for h, d in tree.arcs())
    if model == EISNER_SATTA_SPAN:
        total += sum(scores.span[h, l, r] for l, r, h in dec.spans)
    elif model in (EISNER_HEADSPLIT, EISNER_2O_HEADSPLIT):
        total += sum(scores.left[h, l] + scores.right[h, r] for l, r, h in dec.spans)
        if model == EISNER_2O_HEADSPLIT:
            total += sum(scores.sib[p] for p in sorted(dec.sibling_pairs))
    else:
        assert model == EISNER_1O
    return float(total)


__all__ = [
    "TreeDecomposition", "decompose", "extract_headed_spans", "extract_sibling_pairs",
    "tree_score",
]
