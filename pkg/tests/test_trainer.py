import numpy as np
import pytest

from spandep.conllu import read_conllu
from spandep.core import ALGORITHMS, Sentence, Token
from spandep.cost import augment, hamming
from spandep.decoders import decode
from spandep.scorer import LinearModel, build_scores
from spandep.synthetic import generate
from spandep.trainer import TrainConfig, hinge_step, parse, train, usable


def sentence(heads, labels=None):
    labels = labels or ["dep"] * len(heads)
    toks = tuple(Token(f"w{i}", "X", "_", h, lab)
                 for i, (h, lab) in enumerate(zip(heads, labels), start=1))
    return Sentence(toks)


def corpus(k, seed=0):
    return [s.sentence for s in read_conllu(generate(k, seed))]


def test_config_validation():
    with pytest.raises(ValueError):
        TrainConfig(epochs=0)
    with pytest.raises(ValueError):
        TrainConfig(lr=0)
    assert TrainConfig(model="eisner-satta-span").model == "eisner_satta_span"


@pytest.mark.parametrize("model", ALGORITHMS)
def test_zero_model_loss_is_cost(model):
    x = sentence([2, 0, 2, 3])
    gold = x.gold_tree()
    cfg = TrainConfig(model=model)
    m = LinearModel.zeros(16)
    scores = build_scores(x, m, model)
    pred = decode(augment(scores, gold, model=model).scores, model).tree
    loss, m2 = hinge_step(x, gold, m, cfg)
    assert loss == pytest.approx(hamming(pred, gold, model)) and loss > 0
    assert m2 is m and m.weights.any()


@pytest.mark.parametrize("model", ALGORITHMS)
def test_singleton_reaches_zero(model):
    x = corpus(1, seed=5)[0]
    gold = x.gold_tree()
    cfg = TrainConfig(model=model, lr=0.1)
    m = LinearModel.zeros(18)
    losses = []
    for _ in range(50):
        loss, m = hinge_step(x, gold, m, cfg)
        losses.append(loss)
        if loss == 0:
            break
    assert losses[-1] == 0
    # once separated, a further step leaves the weights alone
    before = m.weights.copy()
    assert hinge_step(x, gold, m, cfg)[0] == 0
    assert np.array_equal(before, m.weights)
    assert decode(build_scores(x, m, model), model).tree == gold


def test_update_touches_only_fired_features():
    x = sentence([2, 0, 2])
    cfg = TrainConfig(model="eisner2o_headsplit")
    m = LinearModel.zeros(20)
    hinge_step(x, x.gold_tree(), m, cfg)
    assert 0 < np.count_nonzero(m.weights) <= 2 * (3 * 23 + 6 * 10 + 2 * 8)


def test_determinism():
    data = corpus(40)
    cfg = TrainConfig(epochs=2, seed=7)
    a, b = train(data, None, cfg), train(data, None, cfg)
    assert np.array_equal(a.weights, b.weights)
    assert np.array_equal(a.label_weights, b.label_weights)


def test_singleton_corpus_training_loss_zero():
    data = corpus(1, seed=2)
    stats = []
    train(data, None, TrainConfig(epochs=30, model="eisner_headsplit"), on_epoch=stats.append)
    assert stats[-1].loss == 0
    assert "loss=0.0000" in stats[-1].line()


def test_errors_and_skips():
    with pytest.raises(ValueError):
        train([], None, TrainConfig())
    crossing = sentence([3, 4, 0, 3])
    with pytest.raises(ValueError):
        train([crossing], None, TrainConfig(epochs=1))
    kept, skipped = usable([crossing, sentence([0, 1])])
    assert len(kept) == 1 and skipped == 1


def test_small_training_run_beats_baseline():
    data = corpus(150, seed=1)
    dev = corpus(30, seed=2)
    stats = []
    m = train(data, dev, TrainConfig(epochs=2), on_epoch=stats.append)
    baseline = np.mean([h == i for x in dev for i, h in enumerate(x.gold_tree().heads)]) * 100
    assert max(s.dev_uas for s in stats) > baseline
    tree, score = parse(dev[0], m)
    assert len(tree.labels) == dev[0].n and np.isfinite(score)
