"""Unlabeled and labeled attachment scores."""

from __future__ import annotations

from dataclasses import dataclass

from .conllu import ConlluDocument

SCORE_ALL = "all"
EXCLUDE_PUNCT = "exclude-punct"
POLICIES = (SCORE_ALL, EXCLUDE_PUNCT)


class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class EvalReport:
    correct_heads: int
    correct_labeled: int
    total: int
    policy: str = SCORE_ALL

    @property
    def uas(self) -> float:
        return 100.0 * self.correct_heads / self.total if self.total else 0.0

    @property
    def las(self) -> float:
        return 100.0 * self.correct_labeled / self.total if self.total else 0.0

    def to_text(self) -> str:
        rows = [("Metric", "Correct", "Total", "Score"),
                ("UAS", str(self.correct_heads), str(self.total), f"{self.uas:.2f}"),
                ("LAS", str(self.correct_labeled), str(self.total), f"{self.las:.2f}")]
        widths = [max(len(r[c]) for r in rows) for c in range(4)]
        lines = [" | ".join(cell.ljust(w) if c == 0 else cell.rjust(w)
                            for c, (cell, w) in enumerate(zip(row, widths))) for row in rows]
        lines.insert(1, "-+-".join("-" * w for w in widths))
        lines.append(f"punctuation policy: {self.policy}")
        return "\n".join(lines)

    def to_kv(self) -> str:
        return "\n".join([
            f"uas={self.uas:.4f}",
            f"las={self.las:.4f}",
            f"correct_heads={self.correct_heads}",
            f"correct_labeled={self.correct_labeled}",
            f"total={self.total}",
            f"policy={self.policy}",
        ])


def evaluate(gold: ConlluDocument, pred: ConlluDocument, policy: str = SCORE_ALL) -> EvalReport:
    """Attachment scores over the words admitted by ``policy``.

    ``exclude-punct`` drops words whose gold UPOS is PUNCT.  Labels are
    compared as full DEPREL strings.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown punctuation policy {policy!r}; expected one of {POLICIES}")
    if len(gold) != len(pred):
        raise AlignmentError(f"gold has {len(gold)} sentences, prediction has {len(pred)}")
    heads = labeled = total = 0
    for k, (g, p) in enumerate(zip(gold, pred), start=1):
        gt, pt = g.sentence.tokens, p.sentence.tokens
        if len(gt) != len(pt):
            raise AlignmentError(f"sentence {k}: gold has {len(gt)} words, prediction {len(pt)}")
        for a, b in zip(gt, pt):
            if a.form != b.form:
                raise AlignmentError(f"sentence {k}: word {a.form!r} aligned with {b.form!r}")
            if policy == EXCLUDE_PUNCT and a.upos == "PUNCT":
                continue
            total += 1
            if a.head is not None and a.head == b.head:
                heads += 1
                if a.deprel == b.deprel:
                    labeled += 1
    return EvalReport(heads, labeled, total, policy)


__all__ = ["AlignmentError", "EXCLUDE_PUNCT", "EvalReport", "POLICIES", "SCORE_ALL", "evaluate"]
