"""Sparse hashed linear scoring of arcs, spans, span boundaries and siblings.

Feature identifiers are 64-bit hashes of a template id and its atoms (word
forms, POS tags, binned distances).  Weights live in a fixed-size table
indexed by the low bits of the identifier, so colliding features share a
weight.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import (
    ProjectiveTree,
    ScoreSet,
    Sentence,
    normalize_algorithm,
    score_components_required,
)
from .trees import decompose

FeatureVector = Counter  # feature id -> count

MODEL_FORMAT = "spandep-linear-model"
MODEL_VERSION = 1

_U64 = np.uint64
_MUL1 = _U64(0xBF58476D1CE4E5B9)
_MUL2 = _U64(0x94D049BB133111EB)
_GOLDEN = _U64(0x9E3779B97F4A7C15)


@lru_cache(maxsize=1 << 16)
def atom(text: str) -> int:
    """Stable 64-bit id of a string (independent of PYTHONHASHSEED)."""
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


def _finalize(x):
    x = x ^ (x >> _U64(30))
    x = x * _MUL1
    x = x ^ (x >> _U64(27))
    x = x * _MUL2
    return x ^ (x >> _U64(31))


def _combine(template: str, parts: Sequence[np.ndarray], shape) -> np.ndarray:
    h = np.full(shape, atom("T:" + template), dtype=_U64)
    for p in parts:
        h = _finalize(h ^ (np.asarray(p, dtype=_U64) + _GOLDEN))
    return h


def _small(values) -> np.ndarray:
    """Map small signed ints (bins, directions) into the id space."""
    return np.asarray(values, dtype=np.int64).astype(_U64) * _U64(0x100000001B3)


def _dist_bin(dist):
    d = np.abs(dist)
    return np.where(d >= 10, 6, np.where(d >= 5, 5, d))


def _count_bin(count):
    return np.minimum(count, 3)


class SentenceContext:
    """Per-sentence atom arrays, indexable by positions -1..n+1 via ``idx + 1``."""

    def __init__(self, x: Sentence):
        self.n = n = x.n
        forms = ["<pad>", "<root>"] + [t.form.lower() for t in x.tokens] + ["<eos>"]
        tags = ["<pad>", "<root>"] + [t.upos for t in x.tokens] + ["<eos>"]
        self.F = np.array([atom("w:" + f) for f in forms], dtype=_U64)
        self.P = np.array([atom("p:" + p) for p in tags], dtype=_U64)

        def prefix(pred):
            ind = np.array([0] + [int(pred(t.upos)) for t in x.tokens] + [0])
            return np.concatenate([[0], np.cumsum(ind)])  # cum[q] = sum(ind[:q])

        self.verbs = prefix(lambda p: p in ("VERB", "AUX"))
        self.puncts = prefix(lambda p: p == "PUNCT")
        self.conjs = prefix(lambda p: p in ("CCONJ", "SCONJ"))

    def f(self, pos):
        return self.F[np.asarray(pos) + 1]

    def p(self, pos):
        return self.P[np.asarray(pos) + 1]


def _between(cum, lo, hi):
    return np.maximum(cum[hi] - cum[lo + 1], 0)


def arc_feature_ids(ctx: SentenceContext, H, D) -> np.ndarray:
    """Feature ids for arcs ``H -> D`` (broadcast arrays); last axis = templates."""
    H, D = np.broadcast_arrays(np.asarray(H), np.asarray(D))
    shape = H.shape
    direction = _small(np.where(D > H, 1, -1))
    dirdist = _small(np.sign(D - H) * _dist_bin(D - H))
    hw, hp, dw, dp = ctx.f(H), ctx.p(H), ctx.f(D), ctx.p(D)
    lo, hi = np.minimum(H, D), np.maximum(H, D)
    verbs = _small(_count_bin(_between(ctx.verbs, lo, hi)))
    puncts = _small(_count_bin(_between(ctx.puncts, lo, hi)))
    conjs = _small(_count_bin(_between(ctx.conjs, lo, hi)))
    n = ctx.n
    hp_l, hp_r = ctx.p(np.maximum(H - 1, -1)), ctx.p(np.minimum(H + 1, n + 1))
    dp_l, dp_r = ctx.p(np.maximum(D - 1, -1)), ctx.p(np.minimum(D + 1, n + 1))
    templates = [
        ("a1", (direction, hw)),
        ("a2", (direction, hp)),
        ("a3", (direction, hw, hp)),
        ("a4", (direction, dw)),
        ("a5", (direction, dp)),
        ("a6", (direction, dw, dp)),
        ("a7", (direction, hw, hp, dw, dp)),
        ("a8", (direction, hp, dw, dp)),
        ("a9", (direction, hw, dw, dp)),
        ("a10", (direction, hw, hp, dp)),
        ("a11", (direction, hw, hp, dw)),
        ("a12", (direction, hw, dw)),
        ("a13", (direction, hp, dp)),
        ("a14", (dirdist, hp, dp)),
        ("a15", (dirdist, hp, dw)),
        ("a16", (direction, hp, hp_r, dp_l, dp)),
        ("a17", (direction, hp_l, hp, dp_l, dp)),
        ("a18", (direction, hp, hp_r, dp, dp_r)),
        ("a19", (direction, hp_l, hp, dp, dp_r)),
        ("a20", (direction, hp, dp, verbs)),
        ("a21", (direction, hp, dp, puncts)),
        ("a22", (direction, hp, dp, conjs)),
        ("a23", (dirdist,)),
    ]
    return np.stack([_combine(name, parts, shape) for name, parts in templates], axis=-1)


ARC_TEMPLATES = 23


def boundary_feature_ids(ctx: SentenceContext, H, Fp, side: str) -> np.ndarray:
    """Features of fencepost ``Fp`` as the ``side`` boundary of head ``H``'s span."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    H, Fp = np.broadcast_arrays(np.asarray(H), np.asarray(Fp))
    shape = H.shape
    s = _small(np.full(shape, 0 if side == "left" else 1))
    if side == "left":
        outer, inner, width = Fp, Fp + 1, H - Fp
    else:
        outer, inner, width = Fp + 1, Fp, Fp - H + 1
    outer = np.clip(outer, -1, ctx.n + 1)
    inner = np.clip(inner, -1, ctx.n + 1)
    hw, hp = ctx.f(H), ctx.p(H)
    op, ip, ow = ctx.p(outer), ctx.p(inner), ctx.f(outer)
    wbin = _small(_dist_bin(width))
    templates = [
        ("b1", (s, hp)),
        ("b2", (s, hp, op)),
        ("b3", (s, hp, ip)),
        ("b4", (s, hp, op, ip)),
        ("b5", (s, hw, op)),
        ("b6", (s, hp, ow)),
        ("b7", (s, hp, wbin)),
        ("b8", (s, hp, op, wbin)),
        ("b9", (s, hw, wbin)),
        ("b10", (s, op, ip)),
    ]
    return np.stack([_combine(name, parts, shape) for name, parts in templates], axis=-1)


BOUNDARY_TEMPLATES = 10


def span_feature_ids(ctx: SentenceContext, H, L, R) -> np.ndarray:
    H, L, R = np.broadcast_arrays(np.asarray(H), np.asarray(L), np.asarray(R))
    shape = H.shape
    n = ctx.n
    hw, hp = ctx.f(H), ctx.p(H)
    lo, li = ctx.p(np.clip(L, -1, n + 1)), ctx.p(np.clip(L + 1, -1, n + 1))
    ri, ro = ctx.p(np.clip(R, -1, n + 1)), ctx.p(np.clip(R + 1, -1, n + 1))
    width = _small(_dist_bin(R - L))
    lreach, rreach = _small(_dist_bin(H - L)), _small(_dist_bin(R - H + 1))
    templates = [
        ("s1", (hp, lo, ro)),
        ("s2", (hp, li, ri)),
        ("s3", (hp, lo, li, ri, ro)),
        ("s4", (hp, width)),
        ("s5", (hw, width)),
        ("s6", (hp, lo)),
        ("s7", (hp, ro)),
        ("s8", (hp, lreach, rreach)),
        ("s9", (hw, lo, ro)),
    ]
    return np.stack([_combine(name, parts, shape) for name, parts in templates], axis=-1)


SPAN_TEMPLATES = 9


def sibling_feature_ids(ctx: SentenceContext, H, A, B) -> np.ndarray:
    """Features of head ``H`` with adjacent modifiers ``A`` (inner) and ``B`` (outer)."""
    H, A, B = np.broadcast_arrays(np.asarray(H), np.asarray(A), np.asarray(B))
    shape = H.shape
    direction = _small(np.where(B > H, 1, -1))
    hw, hp = ctx.f(H), ctx.p(H)
    aw, ap, bw, bp = ctx.f(A), ctx.p(A), ctx.f(B), ctx.p(B)
    gap = _small(_dist_bin(B - A))
    templates = [
        ("g1", (direction, hp, ap, bp)),
        ("g2", (direction, ap, bp)),
        ("g3", (direction, aw, bp)),
        ("g4", (direction, ap, bw)),
        ("g5", (direction, aw, bw)),
        ("g6", (direction, hp, ap, bp, gap)),
        ("g7", (direction, hw, ap, bp)),
        ("g8", (direction, hp, bp)),
    ]
    return np.stack([_combine(name, parts, shape) for name, parts in templates], axis=-1)


SIBLING_TEMPLATES = 8


def _vector(ids: np.ndarray) -> FeatureVector:
    return Counter(int(i) for i in np.ravel(ids))


def _check_word(x: Sentence, i: int, lo: int, what: str) -> None:
    if not lo <= i <= x.n:
        raise IndexError(f"{what} index {i} out of range {lo}..{x.n}")


def featurize_arc(x: Sentence, h: int, d: int) -> FeatureVector:
    _check_word(x, h, 0, "head")
    _check_word(x, d, 1, "dependent")
    if h == d:
        raise ValueError("an arc needs distinct head and dependent")
    return _vector(arc_feature_ids(SentenceContext(x), np.array([h]), np.array([d])))


def featurize_boundary(x: Sentence, h: int, fencepost: int, side: str) -> FeatureVector:
    _check_word(x, h, 1, "head")
    _check_word(x, fencepost, 0, "fencepost")
    return _vector(boundary_feature_ids(SentenceContext(x), np.array([h]),
                                        np.array([fencepost]), side))


def featurize_span(x: Sentence, h: int, l: int, r: int) -> FeatureVector:
    _check_word(x, h, 1, "head")
    if not 0 <= l < h <= r <= x.n:
        raise ValueError(f"invalid headed span ({l}, {r}, {h})")
    return _vector(span_feature_ids(SentenceContext(x), np.array([h]), np.array([l]),
                                    np.array([r])))


def featurize_sibling(x: Sentence, h: int, inner: int, outer: int) -> FeatureVector:
    _check_word(x, h, 0, "head")
    _check_word(x, inner, 1, "inner")
    _check_word(x, outer, 1, "outer")
    if not (h < inner < outer or outer < inner < h):
        raise ValueError(f"({h}, {inner}, {outer}) is not a same-side sibling pair")
    return _vector(sibling_feature_ids(SentenceContext(x), np.array([h]), np.array([inner]),
                                       np.array([outer])))


@dataclass
class LinearModel:
    """Hashed weight tables for structure scores and per-label arc scores."""

    weights: np.ndarray
    labels: tuple[str, ...] = ()
    label_weights: np.ndarray = field(default_factory=lambda: np.zeros(1 << 16))

    @classmethod
    def zeros(cls, bits: int = 20, labels: Iterable[str] = (), label_bits: int = 18):
        return cls(np.zeros(1 << bits), tuple(labels), np.zeros(1 << label_bits))

    @property
    def mask(self) -> int:
        return len(self.weights) - 1

    def copy(self) -> "LinearModel":
        return LinearModel(self.weights.copy(), self.labels, self.label_weights.copy())

    def save(self, path) -> None:
        lines = [MODEL_FORMAT, f"version\t{MODEL_VERSION}",
                 f"bits\t{len(self.weights).bit_length() - 1}",
                 f"label_bits\t{len(self.label_weights).bit_length() - 1}",
                 "labels\t" + "\t".join(self.labels), "[weights]"]
        lines += [f"{i}\t{float(self.weights[i])!r}" for i in np.flatnonzero(self.weights)]
        lines.append("[label_weights]")
        lines += [f"{i}\t{float(self.label_weights[i])!r}" for i in np.flatnonzero(self.label_weights)]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "LinearModel":
        lines = Path(path).read_text(encoding="utf-8").split("\n")
        if not lines or lines[0] != MODEL_FORMAT:
            raise ValueError(f"{path}: not a {MODEL_FORMAT} file")
        header = {}
        pos = 1
        while pos < len(lines) and lines[pos] != "[weights]":
            key, _, value = lines[pos].partition("\t")
            header[key] = value
            pos += 1
        if pos == len(lines) or "bits" not in header or "label_bits" not in header:
            raise ValueError(f"{path}: truncated model header")
        if int(header.get("version", -1)) != MODEL_VERSION:
            raise ValueError(f"{path}: unsupported model version {header.get('version')}")
        labels = tuple(v for v in header["labels"].split("\t") if v)
        model = cls.zeros(int(header["bits"]), labels, int(header["label_bits"]))
        table = model.weights
        for line in lines[pos + 1:]:
            if not line:
                continue
            if line == "[label_weights]":
                table = model.label_weights
                continue
            i, w = line.split("\t")
            table[int(i)] = float(w)
        return model


class SentenceFeatures:
    """Feature ids of every candidate unit of one sentence for one model."""

    def __init__(self, x: Sentence, model: str):
        self.sentence = x
        self.model = model = normalize_algorithm(model)
        self.components = score_components_required(model)
        self.ctx = ctx = SentenceContext(x)
        n = x.n
        idx = np.arange(n + 1)
        self.arc = arc_feature_ids(ctx, idx[:, None], idx[None, :])
        self.left = self.right = self.span = self.sib = None
        if "left" in self.components:
            self.left = boundary_feature_ids(ctx, idx[:, None], idx[None, :], "left")
            self.right = boundary_feature_ids(ctx, idx[:, None], idx[None, :], "right")
        if "span" in self.components:
            self.span = span_feature_ids(ctx, idx[:, None, None], idx[None, :, None],
                                         idx[None, None, :])
        if "sib" in self.components:
            self.sib = sibling_feature_ids(ctx, idx[:, None, None], idx[None, :, None],
                                           idx[None, None, :])

    def scores(self, m: LinearModel) -> ScoreSet:
        n = self.sentence.n
        w, mask = m.weights, _U64(m.mask)
        idx = np.arange(n + 1)

        def dot(ids):
            return w[(ids & mask).astype(np.intp)].sum(axis=-1)

        arc = dot(self.arc)
        arc[:, 0] = 0.0
        arc[idx, idx] = 0.0
        tables = {"arc": arc}
        if self.left is not None:
            H, Fp = idx[:, None], idx[None, :]
            tables["left"] = np.where((H >= 1) & (Fp < H), dot(self.left), 0.0)
            tables["right"] = np.where((H >= 1) & (Fp >= H), dot(self.right), 0.0)
        if self.span is not None:
            H, L, R = idx[:, None, None], idx[None, :, None], idx[None, None, :]
            tables["span"] = np.where((H >= 1) & (L < H) & (H <= R), dot(self.span), 0.0)
        if self.sib is not None:
            H, A, B = idx[:, None, None], idx[None, :, None], idx[None, None, :]
            valid = (A >= 1) & (((H < A) & (A < B)) | ((B < A) & (A < H)))
            tables["sib"] = np.where(valid, dot(self.sib), 0.0)
        return ScoreSet(n, **tables)

    def unit_ids(self, tree: ProjectiveTree) -> np.ndarray:
        """All feature ids fired by ``tree`` under this model, concatenated."""
        dec = decompose(tree)
        parts = [self.arc[h, d] for h, d in sorted(dec.arcs)]
        if self.span is not None:
            parts += [self.span[s.h, s.l, s.r] for s in dec.spans]
        if self.left is not None:
            parts += [self.left[s.h, s.l] for s in dec.spans]
            parts += [self.right[s.h, s.r] for s in dec.spans]
        if self.sib is not None:
            parts += [self.sib[p] for p in sorted(dec.sibling_pairs)]
        return np.concatenate(parts)

    def label_ids(self, heads: Sequence[int], labels: Sequence[str]) -> np.ndarray:
        """Label-conjoined ids for arcs ``heads[i-1] -> i`` with the given labels."""
        arcs = self.arc[np.asarray(heads), np.arange(1, self.sentence.n + 1)]
        lab = np.array([atom("l:" + lab) for lab in labels], dtype=_U64)
        return _finalize(arcs ^ lab[:, None])

    def label_scores(self, heads: Sequence[int], m: LinearModel) -> np.ndarray:
        """(n, |labels|) label scores for the arcs ``heads[i-1] -> i``."""
        if not m.labels:
            return np.zeros((self.sentence.n, 0))
        arcs = self.arc[np.asarray(heads), np.arange(1, self.sentence.n + 1)]
        lab = np.array([atom("l:" + lab) for lab in m.labels], dtype=_U64)
        ids = _finalize(arcs[:, None, :] ^ lab[None, :, None])
        buckets = (ids & _U64(len(m.label_weights) - 1)).astype(np.intp)
        return m.label_weights[buckets].sum(axis=-1)


def build_scores(x: Sentence, m: LinearModel, model: str) -> ScoreSet:
    return SentenceFeatures(x, model).scores(m)


def predict_labels(feats: SentenceFeatures, heads: Sequence[int], m: LinearModel,
                   default: str = "dep") -> tuple[str, ...]:
    if not m.labels:
        return (default,) * len(heads)
    best = feats.label_scores(heads, m).argmax(axis=1)
    return tuple(m.labels[b] for b in best)


__all__ = [
    "ARC_TEMPLATES", "BOUNDARY_TEMPLATES", "FeatureVector", "LinearModel", "SIBLING_TEMPLATES",
    "SPAN_TEMPLATES", "SentenceContext", "SentenceFeatures", "atom", "build_scores",
    "featurize_arc", "featurize_boundary", "featurize_sibling", "featurize_span",
    "predict_labels",
]
