import numpy as np
import pytest

from spandep.core import (
    ALGORITHMS,
    InvalidTreeError,
    MissingComponentError,
    ProjectiveTree,
    ScoreSet,
    Sentence,
    indicator_scores,
    normalize_algorithm,
    require_valid,
    score_components_required,
    validate_tree,
)

from conftest import FIG1_HEADS


def crossing(heads):
    """Definition-based projectivity: no two arcs cross (root arc spans 0..i)."""
    arcs = [(min(h, d), max(h, d)) for d, h in enumerate(heads, start=1)]
    for a, b in arcs:
        for c, d in arcs:
            if a < c < b < d:
                return True
    return False


@pytest.mark.parametrize("heads,ok", [
    ((0,), True),
    ((2, 0, 2, 2), True),
    (FIG1_HEADS, True),
    ((3, 4, 1, 0), False),  # cycle 1 <-> 3
    ((3, 4, 0, 3), False),  # 3 -> 1 crosses 4 -> 2
    ((0, 0), False),  # two roots
    ((2, 1), False),  # no root
    ((5, 0), False),  # out of range
])
def test_validate_examples(heads, ok):
    assert validate_tree(ProjectiveTree(heads)) is ok


def test_validate_multi_root():
    assert validate_tree((0, 0), single_root=False)
    assert not validate_tree((2, 1), single_root=False)


def reaches_root(heads):
    for d in range(1, len(heads) + 1):
        seen = set()
        while d != 0:
            if d in seen:
                return False
            seen.add(d)
            d = heads[d - 1]
    return True


def test_validate_matches_interval_definition():
    rng = np.random.default_rng(3)
    for _ in range(2000):
        n = int(rng.integers(1, 7))
        heads = tuple(int(h) for h in rng.integers(0, n + 1, size=n))
        expected = reaches_root(heads) and not crossing(heads)
        assert validate_tree(ProjectiveTree(heads), single_root=False) is expected
        assert validate_tree(ProjectiveTree(heads)) is (expected and heads.count(0) == 1)


def test_require_valid_raises():
    with pytest.raises(InvalidTreeError):
        require_valid(ProjectiveTree((2, 1)))


def test_tree_basics(fig1):
    assert fig1.n == 5
    assert sorted(fig1.arcs()) == [(0, 3), (2, 1), (3, 2), (3, 5), (5, 4)]
    assert fig1.children()[3] == [2, 5]


@pytest.mark.parametrize("alg,comps", [
    ("eisner_satta_span", {"arc", "span"}),
    ("eisner1o", {"arc"}),
    ("eisner2o_headsplit", {"arc", "sib", "left", "right"}),
    ("eisner_headsplit", {"arc", "left", "right"}),
])
def test_components_required(alg, comps):
    assert score_components_required(alg) == comps


def test_algorithm_names():
    assert normalize_algorithm("eisner-satta-span") == "eisner_satta_span"
    assert set(map(normalize_algorithm, ALGORITHMS)) == set(ALGORITHMS)
    with pytest.raises(ValueError):
        normalize_algorithm("cky")


def test_scoreset_shapes_and_readonly():
    s = ScoreSet.zeros(4)
    assert s.arc.shape == (5, 5) and s.sib.shape == (5, 5, 5)
    with pytest.raises(ValueError):
        s.arc[0, 1] = 1.0
    with pytest.raises(ValueError):
        ScoreSet(3, np.zeros((3, 3)))
    with pytest.raises(MissingComponentError):
        ScoreSet(2, np.zeros((3, 3))).require("eisner_satta_span")


def test_scoreset_grid():
    s = ScoreSet.random(5, np.random.default_rng(0), grid=10)
    assert np.all(s.arc * 1024 == np.round(s.arc * 1024))


def test_indicator_scores(fig1):
    s = indicator_scores(fig1)
    assert s.arc.sum() == 5 and s.span.sum() == 5 and s.left.sum() == 5 and s.sib.sum() == 0


def test_sentence():
    x = Sentence.from_forms(["a", "b"])
    assert x.n == 2 and x.forms == ["a", "b"] and x.gold_tree() is None
    with pytest.raises(ValueError):
        Sentence(())
