"""Structured max-margin training of the linear scorer."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    EISNER_2O_HEADSPLIT,
    LabeledTree,
    ProjectiveTree,
    Sentence,
    normalize_algorithm,
    validate_tree,
)
from .cost import CostConfig, augment
from .decoders import decode
from .scorer import LinearModel, SentenceFeatures, predict_labels
from .trees import tree_score

log = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    epochs: int = 5
    lr: float = 0.1
    seed: int = 0
    model: str = EISNER_2O_HEADSPLIT
    cost: CostConfig = field(default_factory=CostConfig)
    shuffle: bool = True
    dev_every: int = 1
    single_root: bool = True
    bits: int = 20
    label_bits: int = 18

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1")
        if self.lr <= 0:
            raise ValueError("learning rate must be positive")
        self.model = normalize_algorithm(self.model)


@dataclass
class EpochStats:
    epoch: int
    loss: float
    dev_uas: Optional[float]
    dev_las: Optional[float]
    elapsed: float
    updates: int

    def line(self) -> str:
        dev = ("dev_uas=-\tdev_las=-" if self.dev_uas is None
               else f"dev_uas={self.dev_uas:.2f}\tdev_las={self.dev_las:.2f}")
        return f"epoch={self.epoch}\tloss={self.loss:.4f}\t{dev}\telapsed={self.elapsed:.1f}s"


def parse(x: Sentence, m: LinearModel, algorithm: str = EISNER_2O_HEADSPLIT,
          single_root: bool = True) -> tuple[LabeledTree, float]:
    feats = SentenceFeatures(x, algorithm)
    result = decode(feats.scores(m), algorithm, single_root)
    labels = predict_labels(feats, result.tree.heads, m)
    return LabeledTree(result.tree, labels), result.score


def _violation(feats: SentenceFeatures, gold: ProjectiveTree, m: LinearModel,
               cfg: TrainConfig) -> tuple[float, ProjectiveTree]:
    scores = feats.scores(m)
    aug = augment(scores, gold, cfg.cost, cfg.model)
    pred = decode(aug.scores, cfg.model, cfg.single_root)
    if pred.tree == gold:
        return 0.0, pred.tree
    margin = pred.score - aug.constant - tree_score(gold, scores, cfg.model)
    return max(0.0, margin), pred.tree


def _structure_update(feats, gold, pred, m):
    mask = np.uint64(m.mask)
    good = (feats.unit_ids(gold) & mask).astype(np.intp)
    bad = (feats.unit_ids(pred) & mask).astype(np.intp)
    return good, bad


def hinge_step(x: Sentence, gold: ProjectiveTree, m: LinearModel, cfg: TrainConfig,
               feats: Optional[SentenceFeatures] = None) -> tuple[float, LinearModel]:
    """One loss-augmented subgradient step; updates ``m`` in place and returns it."""
    feats = feats or SentenceFeatures(x, cfg.model)
    loss, pred = _violation(feats, gold, m, cfg)
    if loss > 0:
        good, bad = _structure_update(feats, gold, pred, m)
        np.add.at(m.weights, good, cfg.lr)
        np.add.at(m.weights, bad, -cfg.lr)
    return loss, m


def _label_update(feats, gold, labels, m):
    """Cost-augmented multiclass hinge on the gold arcs; returns (good, bad) buckets."""
    scores = feats.label_scores(gold.heads, m)
    gold_idx = np.array([m.labels.index(lab) for lab in labels])
    augmented = scores + 1.0
    augmented[np.arange(len(labels)), gold_idx] -= 1.0
    pred_idx = augmented.argmax(axis=1)
    wrong = np.flatnonzero(pred_idx != gold_idx)
    if not len(wrong):
        return None
    lmask = np.uint64(len(m.label_weights) - 1)
    heads = [gold.heads[i] for i in range(len(labels))]
    good = feats.label_ids(heads, labels)[wrong]
    bad = feats.label_ids(heads, [m.labels[p] for p in pred_idx])[wrong]
    return (good & lmask).astype(np.intp).ravel(), (bad & lmask).astype(np.intp).ravel()


def usable(corpus: Sequence[Sentence], single_root: bool = True):
    """Sentences with a complete projective gold tree, plus the number skipped."""
    kept = []
    for x in corpus:
        gold = x.gold_tree()
        if gold is not None and validate_tree(gold, x.n, single_root=single_root):
            kept.append((x, gold))
    return kept, len(corpus) - len(kept)


def evaluate_sentences(data, m: LinearModel, cfg: TrainConfig) -> tuple[float, float]:
    heads = labeled = total = 0
    for x, gold in data:
        pred, _ = parse(x, m, cfg.model, cfg.single_root)
        gold_labels = x.gold_labels() or ()
        for i, (ph, gh) in enumerate(zip(pred.tree.heads, gold.heads)):
            total += 1
            if ph == gh:
                heads += 1
                if i < len(gold_labels) and pred.labels[i] == gold_labels[i]:
                    labeled += 1
    return 100.0 * heads / total, 100.0 * labeled / total


def train(corpus: Sequence[Sentence], dev_corpus: Optional[Sequence[Sentence]] = None,
          cfg: Optional[TrainConfig] = None,
          on_epoch: Optional[Callable[[EpochStats], None]] = None) -> LinearModel:
    """Averaged subgradient training; returns the averaged model with the best dev UAS."""
    cfg = cfg or TrainConfig()
    if not corpus:
        raise ValueError("training corpus is empty")
    data, skipped = usable(corpus, cfg.single_root)
    if not data:
        raise ValueError("no sentence in the training corpus has a projective gold tree")
    if skipped:
        log.info("skipped %d sentences without a projective gold tree", skipped)
    dev = usable(dev_corpus, cfg.single_root)[0] if dev_corpus else []

    labels = sorted({lab for x, _ in data for lab in (x.gold_labels() or ())})
    m = LinearModel.zeros(cfg.bits, labels, cfg.label_bits)
    # averaging: avg = w - u / c, with u accumulating c * update
    u = np.zeros_like(m.weights)
    u_lab = np.zeros_like(m.label_weights)
    c = 1.0
    rng = np.random.default_rng(cfg.seed)
    best, best_uas = None, -1.0
    start = time.perf_counter()
    lr = cfg.lr

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(len(data)) if cfg.shuffle else np.arange(len(data))
        total_loss = 0.0
        updates = 0
        for idx in order:
            x, gold = data[idx]
            feats = SentenceFeatures(x, cfg.model)
            loss, pred = _violation(feats, gold, m, cfg)
            total_loss += loss
            if loss > 0:
                good, bad = _structure_update(feats, gold, pred, m)
                for buckets, delta in ((good, lr), (bad, -lr)):
                    np.add.at(m.weights, buckets, delta)
                    np.add.at(u, buckets, c * delta)
                updates += 1
            gold_labels = x.gold_labels()
            if gold_labels and labels:
                upd = _label_update(feats, gold, gold_labels, m)
                if upd is not None:
                    for buckets, delta in ((upd[0], lr), (upd[1], -lr)):
                        np.add.at(m.label_weights, buckets, delta)
                        np.add.at(u_lab, buckets, c * delta)
            c += 1.0

        averaged = LinearModel(m.weights - u / c, m.labels, m.label_weights - u_lab / c)
        dev_uas = dev_las = None
        if dev and (epoch % cfg.dev_every == 0 or epoch == cfg.epochs):
            dev_uas, dev_las = evaluate_sentences(dev, averaged, cfg)
        stats = EpochStats(epoch, total_loss / len(data), dev_uas, dev_las,
                           time.perf_counter() - start, updates)
        log.info(stats.line())
        if on_epoch is not None:
            on_epoch(stats)
        if dev_uas is None:
            best = averaged
        elif dev_uas > best_uas:
            best, best_uas = averaged, dev_uas
    return best


__all__ = ["EpochStats", "TrainConfig", "evaluate_sentences", "hinge_step", "parse", "train",
           "usable"]
