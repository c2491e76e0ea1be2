"""Entity candidate detection and confidence feedback.

Recognizers return scored spans; overlapping spans merge into one candidate
keeping the longest span, with the base score being the clamped sum of every
contributing span's score. Human verdicts then move a candidate's confidence
by alpha per label: the default signed mode computes

    P = S + alpha * (posCount - negCount)

so rejections push candidates down; literal mode adds the two counts instead
(kept behind a flag, see feedback_mode).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Protocol

from kgforge.errors import NoRecognizer
from kgforge.model.ontology import CLASS_CONCEPT
from kgforge.textmatch import find_term_spans

FEEDBACK_MODES = ("signed", "literal")
VERDICTS = ("accept", "reject", "edit")


@dataclass(frozen=True)
class RawSpan:
    start: int
    end: int
    surface: str
    score: float
    suggested_class: str = CLASS_CONCEPT
    linked_external: str | None = None


class Recognizer(Protocol):
    def recognize(self, text: str) -> list[RawSpan]: ...


class GazetteerRecognizer:
    """Longest-match spotting of known terms; term -> suggested class iri."""

    def __init__(self, terms: dict[str, str], score: float = 0.6):
        self.terms = terms
        self.score = score

    def recognize(self, text: str) -> list[RawSpan]:
        return [
            RawSpan(s, e, surface, self.score, suggested_class=self.terms[term])
            for s, e, surface, term in find_term_spans(text, self.terms)
        ]


class ExternalLinkerRecognizer:
    """Fixture-backed linker: term -> external iri, carried on the span."""

    def __init__(self, entries: dict[str, str], score: float = 0.5):
        self.entries = entries
        self.score = score

    def recognize(self, text: str) -> list[RawSpan]:
        return [
            RawSpan(s, e, surface, self.score, linked_external=self.entries[term])
            for s, e, surface, term in find_term_spans(text, self.entries)
        ]


@dataclass(frozen=True)
class EntityCandidate:
    id: str
    span: tuple[int, int]
    surface: str
    suggested_class: str
    base_score: float
    pos_count: int = 0
    neg_count: int = 0
    confidence: float = field(default=0.0)
    linked_external: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "span": list(self.span),
            "surface": self.surface,
            "suggestedClass": self.suggested_class,
            "baseScore": self.base_score,
            "posCount": self.pos_count,
            "negCount": self.neg_count,
            "confidence": self.confidence,
            "linkedExternal": self.linked_external,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EntityCandidate":
        return cls(
            id=d["id"],
            span=(d["span"][0], d["span"][1]),
            surface=d["surface"],
            suggested_class=d["suggestedClass"],
            base_score=d["baseScore"],
            pos_count=d.get("posCount", 0),
            neg_count=d.get("negCount", 0),
            confidence=d.get("confidence", d["baseScore"]),
            linked_external=d.get("linkedExternal"),
        )


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def detect_candidates(text: str, recognizers: list[Recognizer]) -> list[EntityCandidate]:
    """Union of recognizer spans, overlap-merged; deterministic order by span."""
    if not recognizers:
        raise NoRecognizer("at least one recognizer must be configured")
    spans: list[RawSpan] = []
    for r in recognizers:
        spans.extend(r.recognize(text))
    if not spans:
        return []

    # Cluster transitively-overlapping spans; the longest span (earliest on
    # ties) represents the cluster and scores sum across members.
    spans.sort(key=lambda s: (-(s.end - s.start), s.start, s.surface))
    clusters: list[list[RawSpan]] = []
    for span in spans:
        home = None
        for cluster in clusters:
            if any(_overlaps((span.start, span.end), (m.start, m.end)) for m in cluster):
                home = cluster
                break
        if home is None:
            clusters.append([span])
        else:
            home.append(span)

    out: list[EntityCandidate] = []
    for cluster in clusters:
        rep = cluster[0]
        total = min(1.0, max(0.0, sum(m.score for m in cluster)))
        external = next((m.linked_external for m in cluster if m.linked_external), None)
        out.append(
            EntityCandidate(
                id=f"ent:{rep.start}:{rep.end}",
                span=(rep.start, rep.end),
                surface=rep.surface,
                suggested_class=rep.suggested_class,
                base_score=total,
                confidence=total,
                linked_external=external,
            )
        )
    out.sort(key=lambda c: (c.span[0], c.span[1]))
    return out


def compute_confidence(
    base_score: float, pos_count: int, neg_count: int, alpha: float, mode: str = "signed"
) -> float:
    if mode == "signed":
        return base_score + alpha * (pos_count - neg_count)
    if mode == "literal":
        return base_score + alpha * (pos_count + neg_count)
    raise ValueError(f"unknown feedback mode {mode!r}")


def update_confidence(
    c: EntityCandidate, verdict: str, alpha: float, mode: str = "signed"
) -> EntityCandidate:
    """Apply one verdict; edit verdicts leave the counts unchanged."""
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    pos = c.pos_count + (1 if verdict == "accept" else 0)
    neg = c.neg_count + (1 if verdict == "reject" else 0)
    return replace(
        c,
        pos_count=pos,
        neg_count=neg,
        confidence=compute_confidence(c.base_score, pos, neg, alpha, mode),
    )


def rank_candidates(candidates: list[EntityCandidate]) -> list[EntityCandidate]:
    """P descending; ties broken by candidate id, lexicographic."""
    return sorted(candidates, key=lambda c: (-c.confidence, c.id))
