"""Link evaluation: exact-span precision/recall/F1 against a gold set.

A prediction counts iff (recordId, span, entityIri) matches a gold link
exactly; percentages throughout; empty denominators score 0. The F1 column
is always the harmonic mean of the reported precision and recall, even where
published tables disagree with their own P/R cells.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from kgforge.linking.pipeline import LinkResult


@dataclass(frozen=True)
class GoldLink:
    record_id: str
    start: int
    end: int
    entity_iri: str

    def key(self) -> tuple:
        return (self.record_id, self.start, self.end, self.entity_iri)


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    correct: int = 0
    predicted: int = 0
    gold: int = 0

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "correct": self.correct,
            "predicted": self.predicted,
            "gold": self.gold,
        }


def load_gold(path: "str | Path") -> list[GoldLink]:
    out: list[GoldLink] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        out.append(GoldLink(d["recordId"], d["start"], d["end"], d["entityIri"]))
    return out


def harmonic_f1(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate_counts(correct: int, predicted: int, gold: int) -> EvalReport:
    precision = 100.0 * correct / predicted if predicted else 0.0
    recall = 100.0 * correct / gold if gold else 0.0
    return EvalReport(
        precision=precision,
        recall=recall,
        f1=harmonic_f1(precision, recall),
        correct=correct,
        predicted=predicted,
        gold=gold,
    )


def evaluate_linking(gold: list[GoldLink], predicted: list[LinkResult]) -> EvalReport:
    gold_keys = {g.key() for g in gold}
    non_nil = [
        (r.mention.source_record_id, r.mention.span[0], r.mention.span[1], r.resolved)
        for r in predicted
        if r.resolved is not None
    ]
    correct = sum(1 for key in non_nil if key in gold_keys)
    return evaluate_counts(correct, len(non_nil), len(gold_keys))


def render_table(reports: dict[str, EvalReport]) -> str:
    """Aligned text table with Subject, Recall, Precision, F1 columns."""
    headers = ("Subject", "Recall", "Precision", "F1")
    rows = [
        (name, f"{r.recall:.2f}", f"{r.precision:.2f}", f"{r.f1:.2f}")
        for name, r in sorted(reports.items())
    ]
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows)) if rows else len(headers[i])
        for i in range(4)
    ]

    def fmt(cells: tuple) -> str:
        left = cells[0].ljust(widths[0])
        rest = [cells[i].rjust(widths[i]) for i in range(1, 4)]
        return "  ".join([left, *rest])

    lines = [fmt(headers)]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)
