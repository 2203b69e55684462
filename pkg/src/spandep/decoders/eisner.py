"""First-order Eisner decoding (arc scores only)."""

from __future__ import annotations

from typing import Optional

from ..core import EISNER_1O, ProjectiveTree, ScoreSet
from .base import VITERBI, DecodeResult, first_split, prepare


def _fill(arc, n, sr, single_root):
    plus, times, zero, one = sr
    size = n + 1
    CR = [[zero] * size for _ in range(size)]  # head i, spans i..j
    CL = [[zero] * size for _ in range(size)]  # head j, spans i..j
    IR = [[zero] * size for _ in range(size)]  # arc i -> j
    IL = [[zero] * size for _ in range(size)]  # arc j -> i
    S = [[zero] * size for _ in range(size)]  # CR[i][k] * CL[k+1][j], shared by IR/IL
    for i in range(size):
        CR[i][i] = CL[i][i] = one

    for j in range(1, size):
        CLj = [row[j] for row in CL]
        for i in range(j - 1, -1, -1):
            CRi = CR[i]
            if i == 0 and single_root:
                acc = CLj[1]
            else:
                acc = zero
                for k in range(i, j):
                    acc = plus(acc, times(CRi[k], CLj[k + 1]))
            S[i][j] = acc
            IR[i][j] = times(acc, arc[i][j])
            if i > 0:
                IL[i][j] = times(acc, arc[j][i])
                # CL(i,j) = CL(i,k) * IL(k,j)
                CLi = CL[i]
                acc = zero
                for k in range(i, j):
                    acc = plus(acc, times(CLi[k], IL[k][j]))
                CLi[j] = acc
                CLj[i] = acc
            if i == 0 and single_root and j < n:
                continue
            # CR(i,j) = IR(i,k) * CR(k,j)
            IRi = IR[i]
            acc = zero
            for k in range(i + 1, j + 1):
                acc = plus(acc, times(IRi[k], CR[k][j]))
            CRi[j] = acc
    return {"CR": CR, "CL": CL, "IR": IR, "IL": IL, "S": S}, CR[0][n]


def _recover(chart, arc, n, sr):
    times = sr.times
    CR, CL, IR, IL, S = (chart[k] for k in ("CR", "CL", "IR", "IL", "S"))
    heads = [0] * n
    stack = [("CR", 0, n)]
    while stack:
        kind, i, j = stack.pop()
        if kind == "CR":
            if i == j:
                continue
            k = first_split(((k, times(IR[i][k], CR[k][j])) for k in range(i + 1, j + 1)),
                            CR[i][j])
            stack += [("IR", i, k), ("CR", k, j)]
        elif kind == "CL":
            if i == j:
                continue
            k = first_split(((k, times(CL[i][k], IL[k][j])) for k in range(i, j)), CL[i][j])
            stack += [("CL", i, k), ("IL", k, j)]
        else:
            if kind == "IR":
                heads[j - 1] = i
            else:
                heads[i - 1] = j
            k = first_split(((k, times(CR[i][k], CL[k + 1][j])) for k in range(i, j)), S[i][j])
            stack += [("CR", i, k), ("CL", k + 1, j)]
    return ProjectiveTree(tuple(heads))


def decode_eisner_1o(scores: Optional[ScoreSet], n: Optional[int] = None,
                     single_root: bool = True, mode: str = VITERBI) -> DecodeResult:
    n, sr, scores = prepare(scores, EISNER_1O, mode, n)
    arc = scores.arc.tolist()
    chart, total = _fill(arc, n, sr, single_root)
    if mode != VITERBI:
        return DecodeResult(None, float(total), mode, count=total)
    return DecodeResult(_recover(chart, arc, n, sr), total, mode)
