"""Triple candidate generation: infobox alignment, sentence co-occurrence,
and open-extraction canonicalization.

Free-text predicates are mapped onto ontology properties by embedding
cosine against property labels; below tau_map the predicate stays unmapped
(cooccurrence candidates start unmapped by design and wait for the
annotator).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Protocol

from kgforge.acquisition.candidates import compute_confidence
from kgforge.model.graph import Literal
from kgforge.model.ontology import PropertyDef
from kgforge.textindex.embedding import EmbeddingProvider, embed_sentence
from kgforge.textindex.tokenize import normalize
from kgforge.textindex.vectors import cosine_dense
from kgforge.textmatch import split_sentences

ORIGINS = ("infobox", "cooccurrence", "openie")

# Config-exposed base scores per origin; the annotator's verdicts move the
# final confidence, these only set the initial ordering.
DEFAULT_ORIGIN_SCORES = {"infobox": 0.6, "cooccurrence": 0.3, "openie": 0.4}


@dataclass(frozen=True)
class InfoboxRow:
    id: str
    predicate: str
    value: str


@dataclass(frozen=True)
class TripleCandidate:
    id: str
    head_iri: str
    predicate: str | None
    predicate_raw: str
    tail: "str | Literal"
    origin: str
    score: float
    pos_count: int = 0
    neg_count: int = 0
    confidence: float = 0.0
    source_triple_id: str | None = None
    sentence_idx: int | None = None

    def __post_init__(self):
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r}")
        if self.origin == "infobox" and self.source_triple_id is None:
            raise ValueError("infobox candidates must carry the source triple id")

    def to_dict(self) -> dict:
        tail = (
            {"literal": self.tail.lexical, "datatype": self.tail.datatype}
            if isinstance(self.tail, Literal)
            else {"iri": self.tail}
        )
        return {
            "id": self.id,
            "headIri": self.head_iri,
            "predicate": self.predicate,
            "predicateRaw": self.predicate_raw,
            "tail": tail,
            "origin": self.origin,
            "score": self.score,
            "posCount": self.pos_count,
            "negCount": self.neg_count,
            "confidence": self.confidence,
            "sourceTripleId": self.source_triple_id,
            "sentenceIdx": self.sentence_idx,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TripleCandidate":
        tail_d = d["tail"]
        tail = (
            Literal(tail_d["literal"], tail_d.get("datatype", "text"))
            if "literal" in tail_d
            else tail_d["iri"]
        )
        return cls(
            id=d["id"],
            head_iri=d["headIri"],
            predicate=d.get("predicate"),
            predicate_raw=d.get("predicateRaw", ""),
            tail=tail,
            origin=d["origin"],
            score=d["score"],
            pos_count=d.get("posCount", 0),
            neg_count=d.get("negCount", 0),
            confidence=d.get("confidence", d["score"]),
            source_triple_id=d.get("sourceTripleId"),
            sentence_idx=d.get("sentenceIdx"),
        )


class OpenIeExtractor(Protocol):
    def extract(self, text: str) -> list[dict]:
        """Each item: {head, predicate, tail, sentenceIdx}."""
        ...


def canonicalize_predicate(
    raw: str,
    properties: list[PropertyDef],
    provider: EmbeddingProvider,
    tau_map: float = 0.5,
) -> str | None:
    """Best-cosine property iri, or None (unmapped) below tau_map."""
    if not properties:
        raise ValueError("property list must be nonempty")
    raw_vec = embed_sentence(provider, raw)
    best_iri: str | None = None
    best_sim = -1.0
    for prop in sorted(properties, key=lambda p: p.iri):
        sim = cosine_dense(raw_vec, embed_sentence(provider, prop.label))
        if sim > best_sim:
            best_iri, best_sim = prop.iri, sim
    return best_iri if best_sim >= tau_map else None


def gen_triple_candidates(
    section_text: str,
    accepted: list[tuple[str, str]],
    infoboxes: dict[str, list[InfoboxRow]] | None = None,
    extractor: OpenIeExtractor | None = None,
    properties: list[PropertyDef] | None = None,
    provider: EmbeddingProvider | None = None,
    tau_map: float = 0.5,
    origin_scores: dict[str, float] | None = None,
) -> list[TripleCandidate]:
    """accepted: (entity iri, surface text) pairs from the committed stage."""
    scores = {**DEFAULT_ORIGIN_SCORES, **(origin_scores or {})}
    norm_text = normalize(section_text)
    out: list[TripleCandidate] = []

    def mapped(raw: str) -> str | None:
        if properties and provider is not None:
            return canonicalize_predicate(raw, properties, provider, tau_map)
        return None

    # (a) infobox rows whose value's lexical form occurs in the section
    for head_iri, rows in sorted((infoboxes or {}).items()):
        if head_iri not in {iri for iri, _ in accepted}:
            continue
        for row in rows:
            if normalize(row.value) not in norm_text:
                continue
            out.append(
                TripleCandidate(
                    id=f"tri:infobox:{row.id}",
                    head_iri=head_iri,
                    predicate=mapped(row.predicate),
                    predicate_raw=row.predicate,
                    tail=Literal(row.value),
                    origin="infobox",
                    score=scores["infobox"],
                    confidence=scores["infobox"],
                    source_triple_id=row.id,
                )
            )

    # (b) unordered entity pairs co-occurring inside one sentence
    sentences = split_sentences(section_text)
    for idx, (s, e) in enumerate(sentences):
        sentence_norm = normalize(section_text[s:e])
        present = sorted(
            {iri for iri, surface in accepted if surface and normalize(surface) in sentence_norm}
        )
        for i in range(len(present)):
            for j in range(i + 1, len(present)):
                out.append(
                    TripleCandidate(
                        id=f"tri:cooc:{idx}:{i}:{j}",
                        head_iri=present[i],
                        predicate=None,
                        predicate_raw="",
                        tail=present[j],
                        origin="cooccurrence",
                        score=scores["cooccurrence"],
                        confidence=scores["cooccurrence"],
                        sentence_idx=idx,
                    )
                )

    # (c) open-extraction triples, predicates canonicalized
    if extractor is not None:
        surface_to_iri = {normalize(surface): iri for iri, surface in accepted if surface}
        for n, row in enumerate(extractor.extract(section_text)):
            head = surface_to_iri.get(normalize(row["head"]))
            if head is None:
                continue
            tail_text = row["tail"]
            tail: "str | Literal" = surface_to_iri.get(normalize(tail_text)) or Literal(tail_text)
            out.append(
                TripleCandidate(
                    id=f"tri:openie:{n}",
                    head_iri=head,
                    predicate=mapped(row["predicate"]),
                    predicate_raw=row["predicate"],
                    tail=tail,
                    origin="openie",
                    score=scores["openie"],
                    confidence=scores["openie"],
                    sentence_idx=row.get("sentenceIdx"),
                )
            )
    return out


class JsonOpenIeExtractor:
    """Fixture-backed extractor reading {triples: [...]} from a JSON file."""

    def __init__(self, path: "str | Path"):
        self.rows = json.loads(Path(path).read_text(encoding="utf-8"))["triples"]

    def extract(self, text: str) -> list[dict]:
        return list(self.rows)


class CallableOpenIeExtractor:
    def __init__(self, fn: Callable[[str], list[dict]]):
        self.fn = fn

    def extract(self, text: str) -> list[dict]:
        return self.fn(text)


def update_triple_confidence(
    c: TripleCandidate, verdict: str, alpha: float, mode: str = "signed"
) -> TripleCandidate:
    if verdict not in ("accept", "reject", "edit"):
        raise ValueError(f"unknown verdict {verdict!r}")
    pos = c.pos_count + (1 if verdict == "accept" else 0)
    neg = c.neg_count + (1 if verdict == "reject" else 0)
    return replace(
        c,
        pos_count=pos,
        neg_count=neg,
        confidence=compute_confidence(c.score, pos, neg, alpha, mode),
    )
