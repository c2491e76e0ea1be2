"""Parse raw exercise text into typed sections via configurable markers.

Marker strings are per-locale config data. Kind classification: option
labels imply choice; a numeric blank implies numberFilling; any blank implies
textFilling; an essay marker implies writing; the fallback is questionAnswer.
Conflicting signals are reported as an AmbiguousKind warning and default to
questionAnswer.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from kgforge.errors import MissingQuestion

EXERCISE_KINDS = ("choice", "textFilling", "numberFilling", "questionAnswer", "writing")


class AmbiguousKind(UserWarning):
    """Two kind signals conflicted; the exercise defaulted to questionAnswer."""


@dataclass(frozen=True)
class MarkerConfig:
    background: tuple[str, ...] = ("Background:", "背景：")
    question: tuple[str, ...] = ("Question:", "问题：", "题目：")
    answer: tuple[str, ...] = ("Answer:", "答案：")
    analysis: tuple[str, ...] = ("Analysis:", "解析：")
    option_pattern: str = r"(?m)^\s*([A-H])[.、．)）]\s*(.+)$"
    blank_pattern: str = r"_{2,}|（\s*）|\(\s{2,}\)"
    number_blank_pattern: str = r"_{2,}\s*(?:cm|mm|km|kg|mol|米|千克|秒|元|°C|%)|=\s*_{2,}"
    essay_markers: tuple[str, ...] = ("essay", "作文", "短文")

    @classmethod
    def load(cls, path: "str | Path") -> "MarkerConfig":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        kwargs = {k: tuple(v) if isinstance(v, list) else v for k, v in d.items()}
        return cls(**kwargs)


@dataclass
class Exercise:
    id: str
    kind: str
    question: str
    background: str = ""
    answer: str = ""
    analysis: str = ""
    choices: list[tuple[str, str]] | None = None
    linked_topics: set[str] = field(default_factory=set)

    def __post_init__(self):
        if self.kind not in EXERCISE_KINDS:
            raise ValueError(f"unknown exercise kind {self.kind!r}")
        if (self.kind == "choice") != (self.choices is not None):
            raise ValueError("choices present iff kind is choice")
        if not self.question.strip():
            raise MissingQuestion(f"exercise {self.id} has an empty question")

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "kind": self.kind,
            "background": self.background,
            "question": self.question,
            "answer": self.answer,
            "analysis": self.analysis,
            "linkedTopics": sorted(self.linked_topics),
        }
        if self.choices is not None:
            d["choices"] = [list(c) for c in self.choices]
        return d


def _split_fields(raw: str, markers: MarkerConfig) -> dict[str, str]:
    # Locate every marker occurrence, then slice the text between them.
    positions: list[tuple[int, int, str]] = []
    for fieldname in ("background", "question", "answer", "analysis"):
        for marker in getattr(markers, fieldname):
            at = raw.find(marker)
            if at >= 0:
                positions.append((at, at + len(marker), fieldname))
    positions.sort()
    fields = {f: "" for f in ("background", "question", "answer", "analysis")}
    for n, (start, body_start, fieldname) in enumerate(positions):
        body_end = positions[n + 1][0] if n + 1 < len(positions) else len(raw)
        fields[fieldname] = raw[body_start:body_end].strip()
    return fields


def classify_kind(
    question: str, markers: MarkerConfig
) -> tuple[str, list[tuple[str, str]] | None]:
    option_matches = re.findall(markers.option_pattern, question)
    has_options = len(option_matches) >= 2
    has_number_blank = bool(re.search(markers.number_blank_pattern, question))
    has_blank = bool(re.search(markers.blank_pattern, question))
    q_low = question.lower()
    has_essay = any(m.lower() in q_low for m in markers.essay_markers)

    signals = [
        s
        for s, on in (
            ("choice", has_options),
            ("filling", has_number_blank or has_blank),
            ("writing", has_essay),
        )
        if on
    ]
    if len(signals) > 1:
        warnings.warn(
            f"conflicting kind signals {signals}; defaulting to questionAnswer",
            AmbiguousKind,
            stacklevel=3,
        )
        return "questionAnswer", None
    if has_options:
        return "choice", [(label, text.strip()) for label, text in option_matches]
    if has_number_blank:
        return "numberFilling", None
    if has_blank:
        return "textFilling", None
    if has_essay:
        return "writing", None
    return "questionAnswer", None


def parse_exercise(raw: str, markers: MarkerConfig | None = None, exercise_id: str = "ex") -> Exercise:
    markers = markers or MarkerConfig()
    fields = _split_fields(raw, markers)
    if not fields["question"]:
        raise MissingQuestion(f"no question marker found in exercise {exercise_id}")
    kind, choices = classify_kind(fields["question"], markers)
    return Exercise(
        id=exercise_id,
        kind=kind,
        background=fields["background"],
        question=fields["question"],
        answer=fields["answer"],
        analysis=fields["analysis"],
        choices=choices,
    )


def load_exercises(path: "str | Path", markers: MarkerConfig | None = None) -> list[Exercise]:
    """JSONL input: each line either a raw string or {"id":.., "raw":..}."""
    out: list[Exercise] = []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        row = json.loads(line)
        if isinstance(row, str):
            out.append(parse_exercise(row, markers, exercise_id=f"ex-{n}"))
        else:
            out.append(parse_exercise(row["raw"], markers, exercise_id=row.get("id", f"ex-{n}")))
    return out
