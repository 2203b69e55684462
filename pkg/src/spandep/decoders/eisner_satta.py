"""Eisner-Satta style O(n^4) decoding with whole headed-span scores.

Items, over words ``i..j`` (fenceposts ``i - 1`` and ``j``):

``T[h][j][i]``
    open item headed by ``h``; children may still be attached.
``C[i][j][h]``
    closed item: ``T`` plus ``span[h, i - 1, j]``.  Only closed items attach.
``H[i][j][g]``
    hook: the best closed item over ``i..j`` already linked to an outside
    head ``g`` (left of ``i`` or right of ``j``), maximised over its inner
    head.  Folding that maximisation into its own item keeps every rule at
    four free indices.

A head collects all of its right dependents before its left ones, innermost
first, so each tree has exactly one derivation.
"""

from __future__ import annotations

from itertools import chain
from typing import Optional

from ..core import EISNER_SATTA_SPAN, ProjectiveTree, ScoreSet
from .base import VITERBI, DecodeResult, first_split, prepare


def _fill(arc, span, n, sr, single_root):
    plus, times, zero, one = sr
    size = n + 1
    # T[h][j][i]: open item of head h over words i..j
    T = [[[zero] * size for _ in range(size)] for _ in range(size)]
    # H[i][j][g]: hook of the span i..j to an outside head g
    H = [[None] * size for _ in range(size)]
    C = [[None] * size for _ in range(size)]

    for w in range(n):
        for i in range(1, n - w + 1):
            j = i + w
            Hi = H[i]
            closed = [zero] * size
            for h in range(i, j + 1):
                Thj = T[h][j]
                if h == i:
                    if w == 0:
                        acc = one
                    else:
                        Th = T[h]
                        acc = zero
                        for k in range(i, j):
                            acc = plus(acc, times(Th[k][h], H[k + 1][j][h]))
                else:
                    acc = zero
                    for k in range(i + 1, h + 1):
                        acc = plus(acc, times(Hi[k - 1][h], Thj[k]))
                Thj[i] = acc
                closed[h] = times(acc, span[h][i - 1][j])
            C[i][j] = closed

            hooks = [zero] * size
            # the root only ever takes the whole sentence under single-root
            first = 1 if single_root and (i > 1 or j < n) else 0
            for g in chain(range(first, i), range(j + 1, size)):
                arc_g = arc[g]
                acc = zero
                for c in range(i, j + 1):
                    acc = plus(acc, times(closed[c], arc_g[c]))
                hooks[g] = acc
            Hi[j] = hooks

    if single_root:
        return {"T": T, "C": C, "H": H, "root": None}, H[1][n][0]
    # the root is a head with right dependents only and no span score
    root = [zero] * size
    root[0] = one
    for j in range(1, size):
        acc = zero
        for k in range(j):
            acc = plus(acc, times(root[k], H[k + 1][j][0]))
        root[j] = acc
    return {"T": T, "C": C, "H": H, "root": root}, root[n]


def _recover(chart, arc, n, sr):
    times = sr.times
    T, C, H, root = (chart[k] for k in ("T", "C", "H", "root"))
    heads = [0] * n
    stack = []
    if root is None:
        stack.append(("H", 0, 1, n))
    else:
        j = n
        while j > 0:
            k = first_split(((k, times(root[k], H[k + 1][j][0])) for k in range(j)), root[j])
            stack.append(("H", 0, k + 1, j))
            j = k
    while stack:
        kind, a, b, c = stack.pop()
        if kind == "T":
            i, h, j = a, b, c
            if i == h:
                if j > h:
                    k = first_split(((k, times(T[h][k][h], H[k + 1][j][h])) for k in range(h, j)),
                                    T[h][j][h])
                    stack += [("T", h, h, k), ("H", h, k + 1, j)]
            else:
                k = first_split(((k, times(H[i][k - 1][h], T[h][j][k]))
                                 for k in range(i + 1, h + 1)), T[h][j][i])
                stack += [("H", h, i, k - 1), ("T", k, h, j)]
        else:
            g, i, j = a, b, c
            closed = C[i][j]
            d = first_split(((d, times(closed[d], arc[g][d])) for d in range(i, j + 1)),
                            H[i][j][g])
            heads[d - 1] = g
            stack.append(("T", i, d, j))
    return ProjectiveTree(tuple(heads))


def decode_eisner_satta_span(scores: Optional[ScoreSet], n: Optional[int] = None,
                             single_root: bool = True, mode: str = VITERBI) -> DecodeResult:
    """Best tree under arc + headed-span scores; O(n^4) time, O(n^3) space."""
    n, sr, scores = prepare(scores, EISNER_SATTA_SPAN, mode, n)
    arc = scores.arc.tolist()
    chart, total = _fill(arc, scores.span.tolist(), n, sr, single_root)
    if mode != VITERBI:
        return DecodeResult(None, float(total), mode, count=total)
    return DecodeResult(_recover(chart, arc, n, sr), total, mode)
