"""Seeded generator of small UD-style treebanks with projective trees.

Sentences come from a toy head-outward grammar (clauses, noun phrases,
prepositional attachments, coordination, auxiliaries, subordinate clauses),
so the trees have realistic label and direction statistics while staying
fully reproducible.  Used for training smoke tests when no real treebank
is available.

    python3 -m spandep.synthetic --sentences 1000 --seed 0 --out train.conllu
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

LEXICON = {
    "NOUN": ("dog cat house river city teacher student book letter car garden window "
             "child farmer market song table road doctor friend storm bridge basket "
             "village horse lamp story field door").split(),
    "PROPN": "Anna Berlin Marco Lisbon Tomas Kyoto".split(),
    "PRON": "she he they we it you".split(),
    "VERB": ("sees finds builds reads writes gives takes likes opens crosses buys "
             "sings carries visits paints").split(),
    "IVERB": "sleeps arrives runs waits laughs falls".split(),
    "AUX": "will can must should might".split(),
    "DET": "the a this every some".split(),
    "ADJ": "old small green quiet heavy bright young long".split(),
    "ADV": "quickly often today slowly again".split(),
    "ADP": "in on near with under from behind".split(),
    "CCONJ": "and or but".split(),
    "SCONJ": "because while".split(),
    "NUM": "two three five".split(),
}


@dataclass
class Node:
    form: str
    upos: str
    deprel: str = "dep"
    left: list["Node"] = field(default_factory=list)  # outermost first
    right: list["Node"] = field(default_factory=list)  # innermost first


class _Grammar:
    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def p(self, prob: float) -> bool:
        return bool(self.rng.random() < prob)

    def word(self, pos: str, upos: str | None = None, deprel: str = "dep") -> Node:
        words = LEXICON[pos]
        return Node(words[int(self.rng.integers(len(words)))], upos or pos, deprel)

    def noun_phrase(self, deprel: str, depth: int) -> Node:
        r = self.rng.random()
        if r < 0.15:
            return self.word("PRON", deprel=deprel)
        if r < 0.25:
            return self.word("PROPN", deprel=deprel)
        head = self.word("NOUN", deprel=deprel)
        if self.p(0.75):
            head.left.append(self.word("DET", deprel="det"))
        elif self.p(0.2):
            head.left.append(self.word("NUM", deprel="nummod"))
        for _ in range(int(self.rng.choice(3, p=[0.6, 0.3, 0.1]))):
            head.left.append(self.word("ADJ", deprel="amod"))
        if depth < 2 and self.p(0.25):
            head.right.append(self.prep_phrase("nmod", depth + 1))
        if depth < 1 and self.p(0.08):
            conj = self.noun_phrase("conj", depth + 1)
            conj.left.insert(0, self.word("CCONJ", deprel="cc"))
            head.right.append(conj)
        return head

    def prep_phrase(self, deprel: str, depth: int) -> Node:
        np_ = self.noun_phrase(deprel, depth)
        np_.left.insert(0, self.word("ADP", deprel="case"))
        return np_

    def clause(self, deprel: str, depth: int) -> Node:
        transitive = self.p(0.7)
        head = self.word("VERB" if transitive else "IVERB", upos="VERB", deprel=deprel)
        if self.p(0.12):
            head.left.append(self.word("ADV", deprel="advmod"))
        head.left.append(self.noun_phrase("nsubj", depth))
        if self.p(0.3):
            head.left.append(self.word("AUX", deprel="aux"))
        if transitive:
            head.right.append(self.noun_phrase("obj", depth))
        for _ in range(int(self.rng.choice(3, p=[0.55, 0.35, 0.1]))):
            head.right.append(self.prep_phrase("obl", depth + 1))
        if self.p(0.15):
            head.right.append(self.word("ADV", deprel="advmod"))
        if depth < 1 and self.p(0.12):
            sub = self.clause("advcl", depth + 1)
            sub.left.insert(0, self.word("SCONJ", deprel="mark"))
            head.right.append(sub)
        elif depth < 1 and self.p(0.1):
            conj = self.clause("conj", depth + 1)
            conj.left.insert(0, self.word("CCONJ", deprel="cc"))
            head.right.append(conj)
        return head

    def sentence(self) -> Node:
        root = self.clause("root", 0)
        root.right.append(Node("." if self.p(0.9) else "!", "PUNCT", "punct"))
        return root


def linearize(root: Node) -> list[tuple[str, str, int, str]]:
    """(form, upos, head, deprel) rows in surface order; heads are 1-based, root 0."""
    order: list[Node] = []
    parent: dict[int, Node | None] = {id(root): None}

    def visit(node: Node):
        for child in node.left:
            parent[id(child)] = node
            visit(child)
        order.append(node)
        for child in node.right:
            parent[id(child)] = node
            visit(child)

    visit(root)
    index = {id(node): i for i, node in enumerate(order, start=1)}
    rows = []
    for node in order:
        p = parent[id(node)]
        rows.append((node.form, node.upos, 0 if p is None else index[id(p)], node.deprel))
    return rows


def generate(sentences: int, seed: int = 0, prefix: str = "synth", max_len: int = 40) -> str:
    """CoNLL-U text with ``sentences`` sentences of at most ``max_len`` words."""
    grammar = _Grammar(np.random.default_rng(seed))
    out = []
    k = 0
    while k < sentences:
        rows = linearize(grammar.sentence())
        if len(rows) > max_len:
            continue
        k += 1
        text = " ".join(form for form, *_ in rows[:-1]) + rows[-1][0]
        out.append(f"# sent_id = {prefix}-{k}\n# text = {text}\n")
        for i, (form, upos, head, deprel) in enumerate(rows, start=1):
            misc = "SpaceAfter=No" if i == len(rows) - 1 else "_"
            out.append(f"{i}\t{form}\t{form.lower()}\t{upos}\t_\t_\t{head}\t{deprel}\t_\t{misc}\n")
        out.append("\n")
    return "".join(out)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python3 -m spandep.synthetic",
                                 description="Write a synthetic UD-style treebank.")
    ap.add_argument("--sentences", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--prefix", default="synth")
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    text = generate(args.sentences, args.seed, args.prefix)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
