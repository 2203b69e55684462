"""Sentences, projective trees, headed spans and score tables.

Indexing conventions used throughout the package:

* words are numbered ``1..n``; index ``0`` is the artificial root;
* fenceposts are numbered ``0..n``; fencepost ``k`` sits between word ``k``
  and word ``k + 1``, so a span ``(l, r)`` covers words ``l + 1 .. r``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

EISNER_1O = "eisner1o"
EISNER_SATTA_SPAN = "eisner_satta_span"
EISNER_HEADSPLIT = "eisner_headsplit"
EISNER_2O_HEADSPLIT = "eisner2o_headsplit"

ALGORITHMS = (EISNER_1O, EISNER_SATTA_SPAN, EISNER_HEADSPLIT, EISNER_2O_HEADSPLIT)

COMPONENTS = ("arc", "sib", "span", "left", "right")

_REQUIRED = {
    EISNER_1O: frozenset({"arc"}),
    EISNER_SATTA_SPAN: frozenset({"arc", "span"}),
    EISNER_HEADSPLIT: frozenset({"arc", "left", "right"}),
    EISNER_2O_HEADSPLIT: frozenset({"arc", "sib", "left", "right"}),
}


class InvalidTreeError(ValueError):
    pass


class MissingComponentError(ValueError):
    pass


def normalize_algorithm(name: str) -> str:
    """Accept ``eisner-satta-span`` as well as ``eisner_satta_span``."""
    key = name.strip().lower().replace("-", "_")
    if key not in _REQUIRED:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}")
    return key


def score_components_required(algorithm: str) -> frozenset[str]:
    return _REQUIRED[normalize_algorithm(algorithm)]


@dataclass(frozen=True)
class Token:
    form: str
    upos: str = "_"
    xpos: str = "_"
    head: Optional[int] = None
    deprel: Optional[str] = None


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not isinstance(self.tokens, tuple):
            object.__setattr__(self, "tokens", tuple(self.tokens))
        if len(self.tokens) < 1:
            raise ValueError("a sentence needs at least one word")

    @classmethod
    def from_forms(cls, forms: Iterable[str], upos: Optional[Iterable[str]] = None) -> "Sentence":
        forms = list(forms)
        tags = list(upos) if upos is not None else ["_"] * len(forms)
        return cls(tuple(Token(f, p) for f, p in zip(forms, tags)))

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]

    @property
    def upos(self) -> list[str]:
        return [t.upos for t in self.tokens]

    def gold_tree(self) -> Optional["ProjectiveTree"]:
        heads = [t.head for t in self.tokens]
        if any(h is None for h in heads):
            return None
        return ProjectiveTree(tuple(heads))

    def gold_labels(self) -> Optional[tuple[str, ...]]:
        labels = [t.deprel for t in self.tokens]
        if any(lab is None for lab in labels):
            return None
        return tuple(labels)


@dataclass(frozen=True)
class ProjectiveTree:
    """Head vector; ``heads[i - 1]`` is the head of word ``i``.

    Construction does not validate; use :func:`validate_tree`.
    """

    heads: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.heads, tuple):
            object.__setattr__(self, "heads", tuple(int(h) for h in self.heads))

    @property
    def n(self) -> int:
        return len(self.heads)

    def head(self, word: int) -> int:
        return self.heads[word - 1]

    def arcs(self) -> list[tuple[int, int]]:
        return [(h, d) for d, h in enumerate(self.heads, start=1)]

    def children(self) -> list[list[int]]:
        """Children of every node 0..n, in increasing word order."""
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for d, h in enumerate(self.heads, start=1):
            kids[h].append(d)
        return kids


class HeadedSpan(NamedTuple):
    l: int
    r: int
    h: int


@dataclass(frozen=True)
class LabeledTree:
    tree: ProjectiveTree
    labels: tuple[str, ...]


def validate_tree(tree: ProjectiveTree | Sequence[int], n: Optional[int] = None,
                  single_root: bool = True) -> bool:
    heads = list(tree.heads if isinstance(tree, ProjectiveTree) else tree)
    if n is None:
        n = len(heads)
    if n < 1 or len(heads) != n:
        return False
    for d, h in enumerate(heads, start=1):
        if not isinstance(h, (int, np.integer)) or h < 0 or h > n or h == d:
            return False
    if single_root and sum(1 for h in heads if h == 0) != 1:
        return False
    if not single_root and not any(h == 0 for h in heads):
        return False

    # every word must reach the root; depth memo doubles as the cycle check
    state = [0] * (n + 1)  # 0 unseen, 1 on path, 2 done
    state[0] = 2
    for start in range(1, n + 1):
        path = []
        node = start
        while state[node] == 0:
            state[node] = 1
            path.append(node)
            node = heads[node - 1]
        if state[node] == 1:
            return False
        for v in path:
            state[v] = 2

    # projectivity: every word strictly between h and d descends from h
    for d, h in enumerate(heads, start=1):
        lo, hi = (h, d) if h < d else (d, h)
        for w in range(lo + 1, hi):
            a = w
            while a != 0 and a != h:
                a = heads[a - 1]
            if a != h:
                return False
    return True


def require_valid(tree: ProjectiveTree, single_root: bool = True) -> None:
    if not validate_tree(tree, tree.n, single_root=single_root):
        raise InvalidTreeError(f"not a valid projective tree: {list(tree.heads)}")


def _frozen(a) -> Optional[np.ndarray]:
    if a is None:
        return None
    arr = np.array(a, dtype=float if np.asarray(a).dtype != object else object)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ScoreSet:
    """Dense score tables for one sentence.

    Every table is indexed by raw word / fencepost indices:

    ``arc[h, d]``
        head ``h`` (0..n) to dependent ``d`` (1..n)
    ``sib[h, inner, outer]``
        adjacent same-side modifiers of ``h``; ``inner`` is closer to ``h``
    ``span[h, l, r]``
        headed span of word ``h`` over fenceposts ``(l, r)``
    ``left[h, l]`` / ``right[h, r]``
        boundary scores of the headed span of ``h``

    Row 0 of the head-indexed tables exists but is only read for ``sib``
    under multi-root decoding.
    """

    n: int
    arc: np.ndarray
    sib: Optional[np.ndarray] = None
    span: Optional[np.ndarray] = None
    left: Optional[np.ndarray] = None
    right: Optional[np.ndarray] = None

    def __post_init__(self):
        n = self.n
        shapes = {"arc": (n + 1, n + 1), "sib": (n + 1,) * 3, "span": (n + 1,) * 3,
                  "left": (n + 1, n + 1), "right": (n + 1, n + 1)}
        for name, shape in shapes.items():
            arr = _frozen(getattr(self, name))
            if arr is not None and arr.shape != shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")
            object.__setattr__(self, name, arr)

    @property
    def components(self) -> frozenset[str]:
        return frozenset(c for c in COMPONENTS if getattr(self, c) is not None)

    def require(self, algorithm: str) -> None:
        missing = score_components_required(algorithm) - self.components
        if missing:
            raise MissingComponentError(
                f"{normalize_algorithm(algorithm)} needs score components {sorted(missing)}")

    def replace(self, **changes) -> "ScoreSet":
        return dataclasses.replace(self, **changes)

    def restricted(self, algorithm: str) -> "ScoreSet":
        """Drop the tables ``algorithm`` does not read."""
        needed = score_components_required(algorithm)
        return self.replace(**{c: None for c in COMPONENTS if c not in needed})

    @classmethod
    def zeros(cls, n: int, components: Iterable[str] = COMPONENTS) -> "ScoreSet":
        comps = set(components) | {"arc"}
        return cls(n, **{c: np.zeros(_shape(c, n)) for c in comps})

    @classmethod
    def ones(cls, n: int, components: Iterable[str] = COMPONENTS) -> "ScoreSet":
        """Integer ones (object dtype); the unit weights of counting mode."""
        comps = set(components) | {"arc"}
        return cls(n, **{c: np.full(_shape(c, n), 1, dtype=object) for c in comps})

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, components: Iterable[str] = COMPONENTS,
               low: float = -1.0, high: float = 1.0, grid: Optional[int] = None) -> "ScoreSet":
        """Uniform random tables.  With ``grid`` the values are snapped to
        multiples of ``2**-grid`` so that sums stay exact in float64."""
        comps = set(components) | {"arc"}
        tables = {}
        for c in COMPONENTS:
            if c not in comps:
                continue
            vals = rng.uniform(low, high, size=_shape(c, n))
            if grid is not None:
                vals = np.round(vals * 2.0**grid) / 2.0**grid
            tables[c] = vals
        return cls(n, **tables)


def _shape(component: str, n: int) -> tuple[int, ...]:
    return (n + 1,) * 3 if component in ("sib", "span") else (n + 1, n + 1)


def indicator_scores(tree: ProjectiveTree, components: Iterable[str] = COMPONENTS,
                     value: float = 1.0) -> ScoreSet:
    """Scores that put ``value`` on each unit of ``tree`` and 0 elsewhere."""
    from .trees import decompose

    n = tree.n
    dec = decompose(tree)
    s = {c: np.zeros(_shape(c, n)) for c in set(components) | {"arc"}}
    for h, d in dec.arcs:
        s["arc"][h, d] = value
    for sp in dec.spans:
        if "span" in s:
            s["span"][sp.h, sp.l, sp.r] = value
        if "left" in s:
            s["left"][sp.h, sp.l] = value
        if "right" in s:
            s["right"][sp.h, sp.r] = value
    if "sib" in s:
        for h, a, b in dec.sibling_pairs:
            s["sib"][h, a, b] = value
    return ScoreSet(n, **s)


def as_tree(heads: ProjectiveTree | Sequence[int] | Mapping) -> ProjectiveTree:
    if isinstance(heads, ProjectiveTree):
        return heads
    return ProjectiveTree(tuple(int(h) for h in heads))


__all__ = [
    "ALGORITHMS", "COMPONENTS", "EISNER_1O", "EISNER_SATTA_SPAN", "EISNER_HEADSPLIT",
    "EISNER_2O_HEADSPLIT", "HeadedSpan", "InvalidTreeError", "LabeledTree",
    "MissingComponentError", "ProjectiveTree", "ScoreSet", "Sentence", "Token",
    "as_tree", "indicator_scores", "normalize_algorithm", "require_valid",
    "score_components_required", "validate_tree",
]
