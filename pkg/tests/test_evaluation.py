from pathlib import Path

import pytest

from spandep.conllu import read_conllu, read_conllu_file
from spandep.evaluation import EXCLUDE_PUNCT, AlignmentError, evaluate

DATA = Path(__file__).parent / "data"


def doc(rows):
    return read_conllu("".join(
        f"{i}\tw{i}\t_\t{pos}\t_\t_\t{h}\t{lab}\t_\t_\n" for i, (h, lab, pos) in enumerate(rows, 1)
    ) + "\n")


def test_identical():
    g = read_conllu_file(DATA / "gold.conllu")
    r = evaluate(g, g)
    assert r.uas == r.las == 100.0


def test_one_wrong_head_of_ten():
    gold = [(0, "root", "X")] + [(1, "dep", "X")] * 9
    pred = [(0, "root", "X"), (3, "dep", "X")] + [(1, "dep", "X")] * 8
    r = evaluate(doc(gold), doc(pred))
    assert r.uas == 90.0 and r.las == 90.0


def test_reference_sheet():
    g, p = read_conllu_file(DATA / "gold.conllu"), read_conllu_file(DATA / "pred.conllu")
    r = evaluate(g, p)
    assert (r.correct_heads, r.correct_labeled, r.total) == (8, 6, 10)
    assert (r.uas, r.las) == (80.0, 60.0)
    r = evaluate(g, p, EXCLUDE_PUNCT)
    assert (r.correct_heads, r.correct_labeled, r.total) == (7, 6, 8)
    assert (r.uas, r.las) == (87.5, 75.0)


def test_subtypes_compared_in_full():
    r = evaluate(doc([(0, "root", "X"), (1, "obl:tmod", "X")]),
                 doc([(0, "root", "X"), (1, "obl", "X")]))
    assert r.uas == 100.0 and r.las == 50.0


def test_order_invariance():
    g, p = read_conllu_file(DATA / "gold.conllu"), read_conllu_file(DATA / "pred.conllu")
    g.sentences.reverse()
    p.sentences.reverse()
    assert evaluate(g, p).uas == 80.0


def test_reports():
    g, p = read_conllu_file(DATA / "gold.conllu"), read_conllu_file(DATA / "pred.conllu")
    r = evaluate(g, p)
    assert "uas=80.0000" in r.to_kv() and "las=60.0000" in r.to_kv()
    lines = r.to_text().splitlines()
    assert lines[0].split() == ["Metric", "|", "Correct", "|", "Total", "|", "Score"]
    assert len({len(ln) for ln in lines[:4]}) == 1


def test_alignment_errors():
    a = doc([(0, "root", "X")])
    with pytest.raises(AlignmentError):
        evaluate(a, doc([(0, "root", "X"), (1, "dep", "X")]))
    with pytest.raises(AlignmentError):
        evaluate(a, read_conllu(""))
    with pytest.raises(AlignmentError):
        evaluate(a, read_conllu("1\tother\t_\tX\t_\t_\t0\troot\t_\t_\n\n"))
    with pytest.raises(ValueError):
        evaluate(a, a, "bogus")
