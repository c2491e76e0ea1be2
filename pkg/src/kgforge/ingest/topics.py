"""Section-to-topic scoring and key-topic assignment.

The score for concept c at section i is the TF-IDF cosine of the section
text against the concept's label+aliases, gated by where c was mentioned in
earlier sections. Two gate modes:

- literal: multiply by O(d_j, c) for every j < i, so the score survives only
  if c is mentioned in all earlier sections;
- firstOccurrence (default): multiply by 1 - O(d_j, c), so the score
  survives only until c's first mention.

O is an exact-substring mention test on normalized text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from kgforge.errors import OrdinalOutOfRange
from kgforge.ingest.markup import DocTree
from kgforge.textindex.tokenize import normalize
from kgforge.textindex.vectors import TfIdfModel, cosine

SCORE_MODES = ("literal", "firstOccurrence")


@dataclass(frozen=True)
class TopicEntry:
    concept_iri: str
    label: str
    aliases: tuple[str, ...] = ()

    def text(self) -> str:
        return " ".join([self.label, *self.aliases])


@dataclass
class TopicCatalog:
    entries: list[TopicEntry] = field(default_factory=list)

    def __post_init__(self):
        seen: set[str] = set()
        for e in self.entries:
            if not e.label:
                raise ValueError(f"topic {e.concept_iri} has an empty label")
            if e.concept_iri in seen:
                raise ValueError(f"duplicate topic iri {e.concept_iri}")
            seen.add(e.concept_iri)

    @classmethod
    def load(cls, path: "str | Path") -> "TopicCatalog":
        rows = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            [
                TopicEntry(
                    concept_iri=r["conceptIri"],
                    label=r["label"],
                    aliases=tuple(r.get("aliases", ())),
                )
                for r in rows
            ]
        )


@dataclass(frozen=True)
class SectionTopicScore:
    section_ordinal: int
    concept_iri: str
    score: float
    mention_vector: tuple[int, ...]


def mentions(section_text: str, entry: TopicEntry) -> int:
    """O(d, c): 1 iff the concept's label or any alias occurs in the text."""
    hay = normalize(section_text)
    for term in (entry.label, *entry.aliases):
        if normalize(term) in hay:
            return 1
    return 0


def build_section_tfidf(tree: DocTree, **kwargs) -> TfIdfModel:
    return TfIdfModel([s.text() for s in tree.sections()], **kwargs)


def section_topic_score(
    tree: DocTree,
    entry: TopicEntry,
    i: int,
    tfidf: TfIdfModel,
    mode: str = "firstOccurrence",
) -> SectionTopicScore:
    if mode not in SCORE_MODES:
        raise ValueError(f"unknown score mode {mode!r}")
    sections = tree.sections()
    if not 1 <= i <= len(sections):
        raise OrdinalOutOfRange(f"ordinal {i} outside 1..{len(sections)}")
    mention_vector = tuple(mentions(sections[j].text(), entry) for j in range(i - 1))
    d = cosine(tfidf.vector(sections[i - 1].text()), tfidf.vector(entry.text()))
    gate = 1.0
    for o in mention_vector:
        gate *= float(o) if mode == "literal" else (1.0 - float(o))
    return SectionTopicScore(
        section_ordinal=i,
        concept_iri=entry.concept_iri,
        score=d * gate,
        mention_vector=mention_vector,
    )


def assign_key_topics(
    tree: DocTree,
    catalog: TopicCatalog,
    tfidf: TfIdfModel | None = None,
    threshold: float = 0.15,
    mode: str = "firstOccurrence",
) -> dict[str, list[tuple[str, float]]]:
    """Per section id: topics with score > threshold, best first, ties by iri."""
    tfidf = tfidf or build_section_tfidf(tree)
    out: dict[str, list[tuple[str, float]]] = {}
    for section in tree.sections():
        scored = [
            (entry.concept_iri, section_topic_score(tree, entry, section.ordinal, tfidf, mode).score)
            for entry in catalog.entries
        ]
        kept = [(iri, s) for iri, s in scored if s > threshold]
        kept.sort(key=lambda pair: (-pair[1], pair[0]))
        out[section.id] = kept
    return out
