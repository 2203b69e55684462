from spandep.conllu import read_conllu
from spandep.core import validate_tree
from spandep.synthetic import generate, main


def test_generated_treebank_is_valid_and_seeded():
    text = generate(200, seed=3)
    assert text == generate(200, seed=3) != generate(200, seed=4)
    doc = read_conllu(text)
    assert len(doc) == 200
    for s in doc:
        assert validate_tree(s.sentence.gold_tree(), s.sentence.n)
        assert s.sentence.n <= 40


def test_cli(tmp_path):
    out = tmp_path / "t.conllu"
    assert main(["--sentences", "3", "--out", str(out)]) == 0
    assert len(read_conllu(out.read_text())) == 3
