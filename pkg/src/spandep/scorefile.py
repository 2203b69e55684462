"""JSON-lines score files: one object per sentence.

Fields: ``n``; ``arc`` as a dense (n+1)x(n+1) nested list (row = head);
optional ``sib`` and ``span`` as sparse ``[h, a, b, score]`` lists; optional
``left`` and ``right`` as dense n x (n+1) lists whose row k is head k+1.
Cells missing from a sparse list score 0.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

import numpy as np

from .core import ScoreSet


class ScoreFileError(ValueError):
    pass


def _dense(obj, shape, name, lineno):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        raise ScoreFileError(f"line {lineno}: {name} is not a numeric table") from None
    if arr.shape != shape:
        raise ScoreFileError(f"line {lineno}: {name} has shape {arr.shape}, expected {shape}")
    return arr


def _sparse(obj, n, name, lineno):
    table = np.zeros((n + 1,) * 3)
    for entry in obj:
        if not isinstance(entry, list) or len(entry) != 4:
            raise ScoreFileError(f"line {lineno}: {name} entries must be [i, j, k, score]")
        i, j, k, v = entry
        if not all(isinstance(x, int) and 0 <= x <= n for x in (i, j, k)):
            raise ScoreFileError(f"line {lineno}: {name} index out of range in {entry}")
        table[i, j, k] = float(v)
    return table


def parse_line(line: str, lineno: int = 1) -> ScoreSet:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise ScoreFileError(f"line {lineno}: invalid JSON ({e.msg})") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("n"), int) or obj["n"] < 1:
        raise ScoreFileError(f"line {lineno}: expected an object with a positive integer 'n'")
    n = obj["n"]
    if "arc" not in obj:
        raise ScoreFileError(f"line {lineno}: missing 'arc'")
    tables = {"arc": _dense(obj["arc"], (n + 1, n + 1), "arc", lineno)}
    for name in ("sib", "span"):
        if name in obj:
            tables[name] = _sparse(obj[name], n, name, lineno)
    for name in ("left", "right"):
        if name in obj:
            full = np.zeros((n + 1, n + 1))
            full[1:] = _dense(obj[name], (n, n + 1), name, lineno)
            tables[name] = full
    return ScoreSet(n, **tables)


def read_scores(stream: IO[str]) -> Iterator[ScoreSet]:
    for lineno, line in enumerate(stream, start=1):
        if line.strip():
            yield parse_line(line, lineno)


def to_json(scores: ScoreSet) -> str:
    n = scores.n
    obj: dict = {"n": n, "arc": np.asarray(scores.arc, dtype=float).tolist()}
    for name in ("sib", "span"):
        table = getattr(scores, name)
        if table is not None:
            table = np.asarray(table, dtype=float)
            obj[name] = [[int(i), int(j), int(k), float(table[i, j, k])]
                         for i, j, k in zip(*np.nonzero(table))]
    for name in ("left", "right"):
        table = getattr(scores, name)
        if table is not None:
            obj[name] = np.asarray(table, dtype=float)[1:].tolist()
    return json.dumps(obj, separators=(",", ":"))


def write_scores(stream: IO[str], scores: Iterable[ScoreSet]) -> None:
    for s in scores:
        stream.write(to_json(s) + "\n")


__all__ = ["ScoreFileError", "parse_line", "read_scores", "to_json", "write_scores"]
