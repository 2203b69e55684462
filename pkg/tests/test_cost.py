import pytest

from spandep.core import ALGORITHMS, ProjectiveTree, ScoreSet
from spandep.cost import CostConfig, augment, hamming
from spandep.decoders import decode
from spandep.oracle import enumerate_projective
from spandep.trees import decompose, tree_score

from conftest import random_tree


def direct_hamming(pred, gold, model):
    """Unit-cost count of predicted units missing from gold, re-derived from scratch."""
    p, g = decompose(pred), decompose(gold)
    miss = len(p.arcs - g.arcs)
    spans_p = {tuple(s) for s in p.spans}
    spans_g = {tuple(s) for s in g.spans}
    if model == "eisner_satta_span":
        miss += len(spans_p - spans_g)
    if model in ("eisner_headsplit", "eisner2o_headsplit"):
        miss += len({(h, l) for l, r, h in spans_p} - {(h, l) for l, r, h in spans_g})
        miss += len({(h, r) for l, r, h in spans_p} - {(h, r) for l, r, h in spans_g})
    if model == "eisner2o_headsplit":
        miss += len(p.sibling_pairs - g.sibling_pairs)
    return miss


@pytest.mark.parametrize("model", ALGORITHMS)
def test_augmented_identity_by_enumeration(model, rng):
    for n in range(1, 6):
        s = ScoreSet.random(n, rng)
        gold = random_tree(rng, n)
        aug = augment(s, gold, model=model)
        for y in enumerate_projective(n):
            lhs = tree_score(y, aug.scores, model) - tree_score(y, s, model) - aug.constant
            assert lhs == pytest.approx(direct_hamming(y, gold, model), abs=1e-9)
            assert hamming(y, gold, model) == direct_hamming(y, gold, model)


@pytest.mark.parametrize("model", ALGORITHMS)
def test_augmented_argmax_dominates_gold(model, rng):
    for _ in range(20):
        n = int(rng.integers(2, 8))
        s = ScoreSet.random(n, rng)
        gold = random_tree(rng, n)
        aug = augment(s, gold, model=model)
        assert decode(aug.scores, model).score >= tree_score(gold, aug.scores, model) - 1e-12


def test_gold_has_zero_cost(fig1):
    for model in ALGORITHMS:
        assert hamming(fig1, fig1, model) == 0


def test_single_arc_change():
    gold = ProjectiveTree((0, 1, 2))
    pred = ProjectiveTree((0, 1, 1))  # word 3 moves from 2 to 1
    assert hamming(pred, gold, "eisner1o") == 1
    arc_only = CostConfig({"arc": 1.0, "span": 0.0, "left_boundary": 0.0,
                           "right_boundary": 0.0, "sibling": 0.0})
    for model in ALGORITHMS:
        assert hamming(pred, gold, model, arc_only) == 1
    assert hamming(pred, gold, "eisner1o", CostConfig({"arc": 2.5})) == 2.5


def test_cost_config_validation():
    with pytest.raises(ValueError):
        CostConfig({"label": 1.0})
    with pytest.raises(ValueError):
        CostConfig({"arc": -1.0})
    with pytest.raises(ValueError):
        CostConfig({"span": 1.0}).costs_for("eisner1o")


def test_augment_leaves_input_untouched(rng, fig1):
    s = ScoreSet.random(5, rng)
    before = s.arc.copy()
    augment(s, fig1, model="eisner2o_headsplit")
    assert (s.arc == before).all()
