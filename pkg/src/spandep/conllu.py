"""CoNLL-U reading and writing that keeps every untouched byte as it was."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .core import LabeledTree, ProjectiveTree, Sentence, Token


class ConlluError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


WORD, MULTIWORD, EMPTY, COMMENT = "word", "multiword", "empty", "comment"


@dataclass
class ConlluSentence:
    lines: list[str]  # raw lines with their terminators
    kinds: list[str]
    sentence: Sentence
    tree: Optional[LabeledTree]
    trailer: str = ""  # blank line(s) after the block, verbatim

    @property
    def comments(self) -> list[str]:
        return [ln.rstrip("\r\n") for ln, k in zip(self.lines, self.kinds) if k == COMMENT]


@dataclass
class ConlluDocument:
    sentences: list[ConlluSentence] = field(default_factory=list)
    preamble: str = ""

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def _split_ending(line: str) -> tuple[str, str]:
    body = line.rstrip("\r\n")
    return body, line[len(body):]


def _parse_block(block: list[tuple[int, str]], trailer: str) -> ConlluSentence:
    lines, kinds, tokens = [], [], []
    for lineno, raw in block:
        body, _ = _split_ending(raw)
        lines.append(raw)
        if body.startswith("#"):
            kinds.append(COMMENT)
            continue
        cols = body.split("\t")
        if len(cols) != 10:
            raise ConlluError(lineno, f"expected 10 tab-separated columns, found {len(cols)}")
        tid = cols[0]
        if "-" in tid:
            kinds.append(MULTIWORD)
            continue
        if "." in tid:
            kinds.append(EMPTY)
            continue
        try:
            wid = int(tid)
        except ValueError:
            raise ConlluError(lineno, f"bad token id {tid!r}") from None
        if wid != len(tokens) + 1:
            raise ConlluError(lineno, f"token id {wid} out of sequence (expected {len(tokens) + 1})")
        head: Optional[int] = None
        if cols[6] != "_":
            try:
                head = int(cols[6])
            except ValueError:
                raise ConlluError(lineno, f"non-integer HEAD {cols[6]!r}") from None
            if head < 0:
                raise ConlluError(lineno, f"negative HEAD {head}")
        deprel = None if cols[7] == "_" else cols[7]
        tokens.append(Token(cols[1], cols[3], cols[4], head, deprel))
        kinds.append(WORD)
    if not tokens:
        raise ConlluError(block[0][0], "sentence block without any word lines")
    n = len(tokens)
    for (lineno, _), tok in zip([b for b, k in zip(block, kinds) if k == WORD], tokens):
        if tok.head is not None and tok.head > n:
            raise ConlluError(lineno, f"HEAD {tok.head} beyond sentence length {n}")
    sentence = Sentence(tuple(tokens))
    heads = [t.head for t in tokens]
    tree = None
    if all(h is not None for h in heads):
        tree = LabeledTree(ProjectiveTree(tuple(heads)), tuple(t.deprel or "_" for t in tokens))
    return ConlluSentence(lines, kinds, sentence, tree, trailer)


def read_conllu(data: Union[bytes, str]) -> ConlluDocument:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    doc = ConlluDocument()
    block: list[tuple[int, str]] = []
    blank = ""
    for lineno, raw in enumerate(text.splitlines(keepends=True), start=1):
        if raw.strip() == "":
            blank += raw
            continue
        if blank:
            if block:
                doc.sentences.append(_parse_block(block, blank))
                block = []
            else:
                doc.preamble += blank
            blank = ""
        block.append((lineno, raw))
    if block:
        doc.sentences.append(_parse_block(block, blank))
    elif blank:
        doc.preamble += blank
    return doc


def read_conllu_file(path) -> ConlluDocument:
    with open(path, "rb") as f:
        return read_conllu(f.read())


Prediction = Union[LabeledTree, ProjectiveTree, None]


def write_conllu(doc: ConlluDocument, predictions: Optional[Sequence[Prediction]] = None) -> bytes:
    """Serialise ``doc``; a prediction replaces HEAD (and DEPREL, if labeled)."""
    if predictions is not None and len(predictions) != len(doc.sentences):
        raise ValueError(f"{len(predictions)} predictions for {len(doc.sentences)} sentences")
    out = [doc.preamble]
    for s_idx, sent in enumerate(doc.sentences):
        pred = predictions[s_idx] if predictions is not None else None
        heads = labels = None
        if isinstance(pred, LabeledTree):
            heads, labels = pred.tree.heads, pred.labels
        elif isinstance(pred, ProjectiveTree):
            heads = pred.heads
        if heads is not None and len(heads) != sent.sentence.n:
            raise ValueError(f"sentence {s_idx + 1}: prediction has {len(heads)} words, "
                             f"expected {sent.sentence.n}")
        w = 0
        for raw, kind in zip(sent.lines, sent.kinds):
            if kind != WORD or heads is None:
                out.append(raw)
                if kind == WORD:
                    w += 1
                continue
            body, ending = _split_ending(raw)
            cols = body.split("\t")
            cols[6] = str(heads[w])
            if labels is not None:
                cols[7] = labels[w]
            out.append("\t".join(cols) + ending)
            w += 1
        out.append(sent.trailer)
    return "".join(out).encode("utf-8")


__all__ = [
    "ConlluDocument", "ConlluError", "ConlluSentence", "read_conllu", "read_conllu_file",
    "write_conllu",
]
