"""Hamming-cost augmented scores for loss-augmented decoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional

import numpy as np

from .core import (
    EISNER_1O,
    EISNER_2O_HEADSPLIT,
    EISNER_HEADSPLIT,
    EISNER_SATTA_SPAN,
    ProjectiveTree,
    ScoreSet,
    normalize_algorithm,
)
from .trees import TreeDecomposition, decompose

UNIT_KINDS = ("arc", "span", "left_boundary", "right_boundary", "sibling")

MODEL_UNITS = {
    EISNER_1O: ("arc",),
    EISNER_SATTA_SPAN: ("arc", "span"),
    EISNER_HEADSPLIT: ("arc", "left_boundary", "right_boundary"),
    EISNER_2O_HEADSPLIT: ("arc", "sibling", "left_boundary", "right_boundary"),
}


@dataclass(frozen=True)
class CostConfig:
    """Per-kind unit costs; kinds left out default to 1.0 when the model scores them."""

    unit_costs: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for kind, cost in self.unit_costs.items():
            if kind not in UNIT_KINDS:
                raise ValueError(f"unknown unit kind {kind!r}")
            if cost < 0:
                raise ValueError(f"unit cost for {kind} must be nonnegative")

    def costs_for(self, model: str) -> dict[str, float]:
        scored = MODEL_UNITS[normalize_algorithm(model)]
        costs = {}
        for kind in UNIT_KINDS:
            cost = float(self.unit_costs.get(kind, 1.0 if kind in scored else 0.0))
            if cost and kind not in scored:
                raise ValueError(f"{model} does not score {kind} units")
            costs[kind] = cost
        return costs


class Augmented(NamedTuple):
    scores: ScoreSet
    constant: float


def _units(dec: TreeDecomposition) -> dict[str, set]:
    return {
        "arc": set(dec.arcs),
        "span": {(s.h, s.l, s.r) for s in dec.spans},
        "left_boundary": {(s.h, s.l) for s in dec.spans},
        "right_boundary": {(s.h, s.r) for s in dec.spans},
        "sibling": set(dec.sibling_pairs),
    }


def hamming(pred: ProjectiveTree, gold: ProjectiveTree, model: str,
            cfg: Optional[CostConfig] = None) -> float:
    """Cost-weighted count of units in ``pred`` that are missing from ``gold``."""
    costs = (cfg or CostConfig()).costs_for(model)
    up, ug = _units(decompose(pred)), _units(decompose(gold))
    return float(sum(costs[k] * len(up[k] - ug[k]) for k in UNIT_KINDS if costs[k]))


def augment(scores: ScoreSet, gold: ProjectiveTree, cfg: Optional[CostConfig] = None,
            model: str = EISNER_1O) -> Augmented:
    """Scores whose tree totals equal ``score + hamming(., gold) + constant``.

    Units that every tree has exactly ``n`` of (arcs, spans, boundaries) are
    charged by subtracting the cost on the gold cells; ``constant`` is then
    minus the total gold cost.  Sibling counts vary between trees, so for
    siblings the cost is added to every non-gold cell instead.
    """
    model = normalize_algorithm(model)
    scores.require(model)
    costs = (cfg or CostConfig()).costs_for(model)
    units = _units(decompose(gold))
    n = scores.n
    changes = {}
    constant = 0.0

    def charge(name, cells, cost):
        table = np.array(getattr(scores, name), dtype=float)
        for cell in cells:
            table[cell] -= cost
        changes[name] = table

    if costs["arc"]:
        charge("arc", units["arc"], costs["arc"])
        constant -= costs["arc"] * n
    if costs["span"]:
        charge("span", units["span"], costs["span"])
        constant -= costs["span"] * n
    if costs["left_boundary"]:
        charge("left", units["left_boundary"], costs["left_boundary"])
        constant -= costs["left_boundary"] * n
    if costs["right_boundary"]:
        charge("right", units["right_boundary"], costs["right_boundary"])
        constant -= costs["right_boundary"] * n
    if costs["sibling"]:
        table = np.array(scores.sib, dtype=float) + costs["sibling"]
        for cell in units["sibling"]:
            table[cell] -= costs["sibling"]
        changes["sib"] = table
    return Augmented(scores.replace(**changes), constant)


__all__ = ["Augmented", "CostConfig", "MODEL_UNITS", "UNIT_KINDS", "augment", "hamming"]
