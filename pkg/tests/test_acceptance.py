"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (the lines are printed
even when output capture is on) or ``python3 tests/test_acceptance.py``.
"""

import re
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from spandep.conllu import read_conllu, read_conllu_file, write_conllu
from spandep.core import (
    ALGORITHMS,
    EISNER_1O,
    EISNER_2O_HEADSPLIT,
    EISNER_HEADSPLIT,
    EISNER_SATTA_SPAN,
    ProjectiveTree,
    ScoreSet,
    indicator_scores,
    score_components_required,
    validate_tree,
)
from spandep.cost import CostConfig, augment, hamming
from spandep.decoders import count_trees, decode
from spandep.evaluation import EXCLUDE_PUNCT, SCORE_ALL, evaluate
from spandep.oracle import brute_force_argmax, enumerate_projective
from spandep.synthetic import generate
from spandep.trainer import TrainConfig, evaluate_sentences, train, usable
from spandep.trees import extract_headed_spans, tree_score

DATA = Path(__file__).parent / "data"


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {name}: {detail}")
        assert ok, f"criterion {number} ({name}) failed: {detail}"
    return emit


def rel_close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_1_oracle_equivalence(report):
    rng = np.random.default_rng(20240101)
    start = time.perf_counter()
    failures = []
    checked = 0
    for alg in ALGORITHMS:
        comps = score_components_required(alg)
        for n in range(2, 9):
            for trial in range(200):
                s = ScoreSet.random(n, rng, components=comps)
                dp = decode(s, alg)
                ref = brute_force_argmax(s, alg)
                checked += 1
                if not (rel_close(dp.score, ref.score)
                        and rel_close(tree_score(dp.tree, s, alg), ref.score)):
                    failures.append((alg, n, trial, dp.score, ref.score))
    elapsed = time.perf_counter() - start
    report(1, "oracle equivalence", not failures and elapsed < 300,
           f"{checked} trials, {len(failures)} mismatches, {elapsed:.1f}s")


def test_2_counting_soundness(report):
    rows = []
    ok = True
    for n in range(1, 9):
        enumerated = sum(1 for _ in enumerate_projective(n))
        counts = {alg: count_trees(alg, n) for alg in ALGORITHMS}
        ok &= set(counts.values()) == {enumerated}
        rows.append(f"n={n}:{enumerated}")
    report(2, "counting soundness", ok, " ".join(rows))


def test_3_reduction_identities(report):
    # scores on a 2**-20 grid: every partial sum is exact in float64
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(100):
        s = ScoreSet.random(8, rng, grid=20)
        first = decode(s, EISNER_1O).score
        no_span = decode(s.replace(span=np.zeros_like(s.span)), EISNER_SATTA_SPAN).score
        no_bounds = decode(s.replace(left=np.zeros_like(s.left), right=np.zeros_like(s.right)),
                           EISNER_HEADSPLIT).score
        split = decode(s, EISNER_HEADSPLIT).score
        no_sib = decode(s.replace(sib=np.zeros_like(s.sib)), EISNER_2O_HEADSPLIT).score
        bad += not (no_span == first and no_bounds == first and no_sib == split)
    report(3, "reduction identities", bad == 0, f"100 trials at n=8, {bad} inexact")


def test_4_headsplit_decomposition(report):
    rng = np.random.default_rng(11)
    worst = 0.0
    for trial in range(100):
        n = 1 + trial % 7
        s = ScoreSet.random(n, rng)
        joint = s.replace(span=s.left[:, :, None] + s.right[:, None, :])
        a = decode(joint, EISNER_SATTA_SPAN).score
        b = decode(joint, EISNER_HEADSPLIT).score
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    report(4, "head-split decomposition", worst <= 1e-9, f"max relative gap {worst:.2e}")


def test_5_figure1(report):
    tree = ProjectiveTree((2, 3, 0, 5, 3))
    spans = set(extract_headed_spans(tree))
    expected = {(0, 1, 1), (0, 2, 2), (0, 5, 3), (3, 4, 4), (3, 5, 5)}
    result = decode(indicator_scores(tree, components=("arc", "span")), EISNER_SATTA_SPAN)
    ok = spans == expected and result.tree == tree and result.score == 10
    report(5, "figure 1 reproduction", ok,
           f"spans={sorted(tuple(sp) for sp in spans)} heads={list(result.tree.heads)} score={result.score}")


def _bench_slope(alg, lengths, repeats):
    # a fresh interpreter, as a user would run it; the test process carries
    # large enumeration caches that distort small-n timings
    proc = subprocess.run(
        [sys.executable, "-m", "spandep", "bench", "--algorithm", alg,
         "--lengths", ",".join(map(str, lengths)), "--repeats", str(repeats)],
        capture_output=True, text=True, check=True)
    return float(re.search(r"slope \(fit on min_s\): (\S+)", proc.stdout).group(1))


def test_6_complexity_slopes(report):
    start = time.perf_counter()
    slopes = {}
    for alg in (EISNER_1O, EISNER_HEADSPLIT, EISNER_2O_HEADSPLIT):
        slopes[alg] = _bench_slope(alg, (20, 40, 80, 160, 320), 2)
    slopes[EISNER_SATTA_SPAN] = _bench_slope(EISNER_SATTA_SPAN, (10, 20, 40, 80), 5)
    elapsed = time.perf_counter() - start
    ok = all(2.5 <= slopes[a] <= 3.5 for a in (EISNER_1O, EISNER_HEADSPLIT, EISNER_2O_HEADSPLIT))
    ok &= 3.5 <= slopes[EISNER_SATTA_SPAN] <= 4.5 and elapsed < 600
    detail = " ".join(f"{a}={k:.2f}" for a, k in slopes.items()) + f" ({elapsed:.0f}s)"
    report(6, "complexity slopes", ok, detail)


def test_7_loss_augmented(report):
    rng = np.random.default_rng(5)
    arc_only = CostConfig({"arc": 1.0, "span": 0.0, "left_boundary": 0.0,
                           "right_boundary": 0.0, "sibling": 0.0})
    violations = perturb_bad = 0
    trials = perturbations = 0
    for alg in ALGORITHMS:
        for _ in range(50):
            n = int(rng.integers(2, 8))
            trees = list(enumerate_projective(n))
            gold = trees[int(rng.integers(len(trees)))]
            s = ScoreSet.random(n, rng, components=score_components_required(alg))
            aug = augment(s, gold, model=alg)
            best = decode(aug.scores, alg)
            trials += 1
            violations += best.score < tree_score(gold, aug.scores, alg) - 1e-12
            violations += hamming(gold, gold, alg) != 0
            # every valid tree that moves exactly one head
            for d in range(1, n + 1):
                for h in range(n + 1):
                    heads = list(gold.heads)
                    if h == heads[d - 1] or h == d:
                        continue
                    heads[d - 1] = h
                    if not validate_tree(heads, n):
                        continue
                    y = ProjectiveTree(tuple(heads))
                    perturbations += 1
                    cfg = None if alg == EISNER_1O else arc_only
                    perturb_bad += hamming(y, gold, alg, cfg) != 1
    report(7, "loss-augmented decoding", violations == 0 and perturb_bad == 0,
           f"{trials} trials, {violations} violations; "
           f"{perturbations} single-arc perturbations, {perturb_bad} with cost != 1")


def test_8_training_sanity(report):
    sample = read_conllu(generate(1200, seed=0))
    sentences = [s.sentence for s in sample]
    train_set, dev_set = sentences[:1000], sentences[1000:]
    stats = []
    cfg = TrainConfig(epochs=3, lr=0.1, seed=0, model=EISNER_2O_HEADSPLIT)
    model = train(train_set, dev_set, cfg, on_epoch=stats.append)
    losses = [st.loss for st in stats]
    steady = all(b <= 1.1 * a for a, b in zip(losses, losses[1:]))
    dev = usable(dev_set)[0]
    uas, las = evaluate_sentences(dev, model, cfg)
    baseline = 100.0 * np.mean([h == i for x, gold in dev for i, h in enumerate(gold.heads)])
    report(8, "training sanity", steady and uas > baseline,
           f"epoch losses {[round(v, 4) for v in losses]}, dev UAS {uas:.2f} "
           f"(LAS {las:.2f}) vs attach-previous {baseline:.2f}")


def test_9_conllu_roundtrip_and_scoring(report):
    identical = all(
        write_conllu(read_conllu_file(DATA / f"{name}.conllu"))
        == (DATA / f"{name}.conllu").read_bytes()
        for name in ("roundtrip", "gold", "pred"))
    gold, pred = read_conllu_file(DATA / "gold.conllu"), read_conllu_file(DATA / "pred.conllu")
    everything = evaluate(gold, pred, SCORE_ALL)
    no_punct = evaluate(gold, pred, EXCLUDE_PUNCT)
    sheet = ((everything.uas, everything.las, no_punct.uas, no_punct.las)
             == (80.0, 60.0, 87.5, 75.0))
    report(9, "CoNLL-U round trip and scoring", identical and sheet,
           f"byte-identical={identical}; UAS/LAS all={everything.uas:.2f}/{everything.las:.2f} "
           f"no-punct={no_punct.uas:.2f}/{no_punct.las:.2f}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
