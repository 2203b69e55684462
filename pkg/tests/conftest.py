import numpy as np
import pytest

from spandep.core import ProjectiveTree
from spandep.oracle import enumerate_projective

FIG1_HEADS = (2, 3, 0, 5, 3)
FIG1_FORMS = ("the", "child", "reads", "a", "book")
FIG1_SPANS = {(0, 1, 1), (0, 2, 2), (0, 5, 3), (3, 4, 4), (3, 5, 5)}


@pytest.fixture
def fig1():
    return ProjectiveTree(FIG1_HEADS)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_tree(rng, n, single_root=True):
    trees = list(enumerate_projective(n, single_root))
    return trees[int(rng.integers(len(trees)))]
