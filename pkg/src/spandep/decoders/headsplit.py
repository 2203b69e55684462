"""Eisner decoding with head-split span boundary scores, first and second order.

Complete triangles come in two flavours.  An *open* triangle may still take
children on its outer side; a *closed* one has absorbed its boundary score
(``right[h, r]`` or ``left[h, l]``) and may only be attached as a dependent.
Linking pairs the head's open triangle with the dependent's closed one;
combining extends a trapezoid with the dependent's closed triangle.

The second-order variant adds sibling boxes ``B[k][j]`` (the closed right
triangle of ``k`` next to the closed left triangle of ``j``) and only lets a
head take its *first* child on a side from an open triangle of length one.
"""

from __future__ import annotations

from typing import Optional

from ..core import EISNER_2O_HEADSPLIT, EISNER_HEADSPLIT, ProjectiveTree, ScoreSet
from .base import VITERBI, DecodeResult, first_split, prepare


def _table(size, zero):
    return [[zero] * size for _ in range(size)]


def _fill(arc, left, right, sib, n, sr, single_root):
    plus, times, zero, one = sr
    second_order = sib is not None
    size = n + 1
    RT, RC, LT, LC = (_table(size, zero) for _ in range(4))
    IR, IL, SR, SL = (_table(size, zero) for _ in range(4))
    B = _table(size, zero) if second_order else None
    for i in range(size):
        RT[i][i] = LT[i][i] = one
    for i in range(1, size):
        RC[i][i] = times(one, right[i][i])
        LC[i][i] = times(one, left[i][i - 1])

    for j in range(1, size):
        # columns ending at j, filled in step with the row tables
        LCj = [row[j] for row in LC]
        LTj = [row[j] for row in LT]
        if second_order:
            sib_out = sib[:, :, j].tolist()  # [head][inner] with outer == j
            sib_head = sib[j].tolist()  # [inner][outer] with head == j
            Bj = [row[j] for row in B]
        for i in range(j - 1, -1, -1):
            RTi, RCi = RT[i], RC[i]
            # arc i -> j
            if i == 0 and single_root:
                acc = times(RTi[0], LCj[1])
            elif second_order:
                acc = times(RTi[i], LCj[i + 1])
                IRi = IR[i]
                sib_i = sib_out[i]
                for k in range(i + 1, j):
                    acc = plus(acc, times(times(IRi[k], Bj[k]), sib_i[k]))
            else:
                acc = zero
                for k in range(i, j):
                    acc = plus(acc, times(RTi[k], LCj[k + 1]))
            SR[i][j] = acc
            IR[i][j] = times(acc, arc[i][j])

            if i > 0:
                if second_order:
                    # sibling box (i, j): right-closed i next to left-closed j
                    acc = zero
                    for r in range(i, j):
                        acc = plus(acc, times(RCi[r], LCj[r + 1]))
                    B[i][j] = Bj[i] = acc
                    # arc j -> i
                    Bi = B[i]
                    acc = zero
                    for k in range(i + 1, j):
                        acc = plus(acc, times(times(Bi[k], IL[k][j]), sib_head[k][i]))
                    acc = plus(acc, times(RCi[j - 1], LTj[j]))
                else:
                    acc = zero
                    for k in range(i, j):
                        acc = plus(acc, times(RCi[k], LTj[k + 1]))
                SL[i][j] = acc
                IL[i][j] = times(acc, arc[j][i])

                # L-COMB then L-FINISH
                LCi = LC[i]
                acc = zero
                for k in range(i, j):
                    acc = plus(acc, times(LCi[k], IL[k][j]))
                LT[i][j] = LTj[i] = acc
                LCi[j] = LCj[i] = times(acc, left[j][i - 1])

            if i == 0 and single_root and j < n:
                continue
            # R-COMB then R-FINISH
            IRi = IR[i]
            acc = zero
            for k in range(i + 1, j + 1):
                acc = plus(acc, times(IRi[k], RC[k][j]))
            RTi[j] = acc
            if i > 0:
                RCi[j] = times(acc, right[i][j])

    chart = {"RT": RT, "RC": RC, "LT": LT, "LC": LC, "IR": IR, "IL": IL,
             "SR": SR, "SL": SL, "B": B}
    return chart, RT[0][n]


def _recover(chart, sib, n, sr, single_root):
    times = sr.times
    RT, RC, LT, LC, IR, IL, SR, SL, B = (
        chart[k] for k in ("RT", "RC", "LT", "LC", "IR", "IL", "SR", "SL", "B"))
    second_order = sib is not None
    heads = [0] * n
    stack = [("RT", 0, n)]
    while stack:
        kind, i, j = stack.pop()
        if kind == "RC":
            stack.append(("RT", i, j))
        elif kind == "LC":
            stack.append(("LT", i, j))
        elif kind == "RT":
            if i < j:
                k = first_split(((k, times(IR[i][k], RC[k][j])) for k in range(i + 1, j + 1)),
                                RT[i][j])
                stack += [("IR", i, k), ("RC", k, j)]
        elif kind == "LT":
            if i < j:
                k = first_split(((k, times(LC[i][k], IL[k][j])) for k in range(i, j)), LT[i][j])
                stack += [("LC", i, k), ("IL", k, j)]
        elif kind == "B":
            r = first_split(((r, times(RC[i][r], LC[r + 1][j])) for r in range(i, j)), B[i][j])
            stack += [("RC", i, r), ("LC", r + 1, j)]
        elif kind == "IR":
            heads[j - 1] = i
            if second_order and not (i == 0 and single_root):
                cands = [(i, times(RT[i][i], LC[i + 1][j]))]
                cands += [(k, times(times(IR[i][k], B[k][j]), sib[i, k, j]))
                          for k in range(i + 1, j)]
                k = first_split(cands, SR[i][j])
                stack += [("RT", i, i), ("LC", i + 1, j)] if k == i else [("IR", i, k), ("B", k, j)]
            else:
                k = first_split(((k, times(RT[i][k], LC[k + 1][j])) for k in range(i, j)),
                                SR[i][j])
                stack += [("RT", i, k), ("LC", k + 1, j)]
        else:  # IL
            heads[i - 1] = j
            if second_order:
                cands = [(k, times(times(B[i][k], IL[k][j]), sib[j, k, i]))
                         for k in range(i + 1, j)]
                cands.append((j, times(RC[i][j - 1], LT[j][j])))
                k = first_split(cands, SL[i][j])
                stack += [("RC", i, j - 1), ("LT", j, j)] if k == j else [("B", i, k), ("IL", k, j)]
            else:
                k = first_split(((k, times(RC[i][k], LT[k + 1][j])) for k in range(i, j)),
                                SL[i][j])
                stack += [("RC", i, k), ("LT", k + 1, j)]
    return ProjectiveTree(tuple(heads))


def _decode(scores, n, single_root, mode, algorithm):
    n, sr, scores = prepare(scores, algorithm, mode, n)
    sib = scores.sib if algorithm == EISNER_2O_HEADSPLIT else None
    chart, total = _fill(scores.arc.tolist(), scores.left.tolist(), scores.right.tolist(),
                         sib, n, sr, single_root)
    if mode != VITERBI:
        return DecodeResult(None, float(total), mode, count=total)
    return DecodeResult(_recover(chart, sib, n, sr, single_root), total, mode)


def decode_eisner_headsplit(scores: Optional[ScoreSet], n: Optional[int] = None,
                            single_root: bool = True, mode: str = VITERBI) -> DecodeResult:
    """Best tree under arc + left-boundary + right-boundary scores, O(n^3)."""
    return _decode(scores, n, single_root, mode, EISNER_HEADSPLIT)


def decode_eisner_2o_headsplit(scores: Optional[ScoreSet], n: Optional[int] = None,
                               single_root: bool = True, mode: str = VITERBI) -> DecodeResult:
    """As :func:`decode_eisner_headsplit` plus adjacent-sibling scores, O(n^3)."""
    return _decode(scores, n, single_root, mode, EISNER_2O_HEADSPLIT)
