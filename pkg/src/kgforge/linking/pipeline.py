"""Entity linking: mention detection, candidate generation, disambiguation,
and record indexing into the graph.

Disambiguation ranks candidates by embedding cosine between the mention's
context and each candidate's description; below tau_nil the mention resolves
to NIL. Context per record shape: the mention's sentence (or image caption)
for plain text, the non-focus columns for field records, and the source
description for external entities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from kgforge.consolidation.roles import DEFAULT_ROLE_TEMPLATES, RoleTemplate
from kgforge.linking.records import SEMI_STRUCTURED, UNSTRUCTURED, HeteroRecord
from kgforge.model.graph import Entity, KnowledgeGraph, Provenance, RoleType, Triple, slugify
from kgforge.model.ontology import CLASS_EXTERNAL_DATUM, PROP_INDEXED_BY
from kgforge.textindex.embedding import EmbeddingProvider, embed_sentence
from kgforge.textindex.search import InvertedIndex, SearchHit, fuzzy_search
from kgforge.textindex.vectors import cosine_dense
from kgforge.textmatch import find_term_spans, sentence_at


@dataclass(frozen=True)
class Mention:
    span: tuple[int, int]
    surface: str
    kind: str  # concept | role
    source_record_id: str
    role_type: RoleType | None = None

    def __post_init__(self):
        if self.kind not in ("concept", "role"):
            raise ValueError(f"unknown mention kind {self.kind!r}")
        if self.kind == "role" and self.role_type is None:
            raise ValueError("role mentions must carry a role type")


@dataclass(frozen=True)
class LinkResult:
    mention: Mention
    resolved: str | None
    score: float
    trace: tuple[tuple[str, float], ...] = ()

    def to_dict(self) -> dict:
        return {
            "recordId": self.mention.source_record_id,
            "span": list(self.mention.span),
            "surface": self.mention.surface,
            "kind": self.mention.kind,
            "roleType": self.mention.role_type.value if self.mention.role_type else None,
            "resolved": self.resolved if self.resolved is not None else "NIL",
            "score": self.score,
            "trace": [[iri, s] for iri, s in self.trace],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinkResult":
        role_type = RoleType(data["roleType"]) if data.get("roleType") else None
        mention = Mention(
            span=(data["span"][0], data["span"][1]),
            surface=data["surface"],
            kind=data["kind"],
            source_record_id=data["recordId"],
            role_type=role_type,
        )
        resolved = data["resolved"]
        return cls(
            mention=mention,
            resolved=None if resolved == "NIL" else resolved,
            score=data["score"],
            trace=tuple((iri, s) for iri, s in data.get("trace", [])),
        )


def detect_mentions(
    text: str,
    gazetteer: dict[str, str],
    role_templates: tuple[RoleTemplate, ...] = DEFAULT_ROLE_TEMPLATES,
    record_id: str = "",
) -> list[Mention]:
    """Union of gazetteer longest-matches and role-template trigger matches.

    Overlaps resolve in favor of role mentions, then longer spans.
    """
    raw: list[tuple[int, Mention]] = []
    for s, e, surface, _term in find_term_spans(text, gazetteer):
        raw.append((1, Mention((s, e), surface, "concept", record_id)))
    for template in role_templates:
        for pattern in template.patterns:
            for m in re.finditer(pattern, text, re.IGNORECASE):
                s, e = m.span()
                if e > s:
                    raw.append(
                        (
                            0,
                            Mention(
                                (s, e),
                                text[s:e],
                                "role",
                                record_id,
                                role_type=template.role_type,
                            ),
                        )
                    )
    # role-first, then longer spans, then position
    raw.sort(key=lambda p: (p[0], -(p[1].span[1] - p[1].span[0]), p[1].span))
    taken = [False] * len(text)
    out: list[Mention] = []
    for _, mention in raw:
        s, e = mention.span
        if any(taken[s:e]):
            continue
        for i in range(s, e):
            taken[i] = True
        out.append(mention)
    out.sort(key=lambda m: m.span)
    return out


def gen_candidates(index: InvertedIndex, mention: Mention, k: int = 5) -> list[SearchHit]:
    return fuzzy_search(index, mention.surface, k=k)


def build_context(record: HeteroRecord, mention: Mention) -> str:
    if record.kind == UNSTRUCTURED:
        content = record.content()
        if not record.text and record.caption:
            return record.caption
        s, e = sentence_at(content, mention.span[0])
        return content[s:e]
    if record.kind == SEMI_STRUCTURED:
        parts = [f"{name}: {value}" for name, value in record.fields if name != record.focus_field]
        return "; ".join(parts)
    return record.description


def disambiguate(
    mention: Mention,
    context: str,
    candidates: list[SearchHit],
    entities: dict[str, Entity],
    provider: EmbeddingProvider,
    tau_nil: float = 0.2,
) -> LinkResult:
    """Rank by cosine(context, candidate description); NIL below tau_nil."""
    if not candidates:
        return LinkResult(mention=mention, resolved=None, score=0.0, trace=())
    ctx_vec = embed_sentence(provider, context)
    scored: list[tuple[str, float]] = []
    for hit in candidates:
        entity = entities[hit.iri]
        sim = cosine_dense(ctx_vec, embed_sentence(provider, entity.description or entity.label))
        scored.append((hit.iri, sim))
    scored.sort(key=lambda p: (-p[1], p[0]))
    top_iri, top_score = scored[0]
    resolved = top_iri if top_score >= tau_nil else None
    return LinkResult(mention=mention, resolved=resolved, score=top_score, trace=tuple(scored))


@dataclass
class LinkerConfig:
    k: int = 5
    tau_nil: float = 0.2
    role_templates: tuple[RoleTemplate, ...] = DEFAULT_ROLE_TEMPLATES


def concept_gazetteer(kg: KnowledgeGraph) -> dict[str, str]:
    """label/alias -> iri over the graph's concept entities."""
    terms: dict[str, str] = {}
    for iri in sorted(kg.entities):
        e = kg.entities[iri]
        if e.kind not in ("concept", "rhetoricalRole"):
            continue
        terms.setdefault(e.label, iri)
        for alias in sorted(e.aliases):
            terms.setdefault(alias, iri)
    return terms


def link_record(
    record: HeteroRecord,
    index: InvertedIndex,
    entities: dict[str, Entity],
    gazetteer: dict[str, str],
    provider: EmbeddingProvider,
    cfg: LinkerConfig | None = None,
) -> list[LinkResult]:
    """Full pipeline over one record; deterministic for fixed inputs."""
    cfg = cfg or LinkerConfig()
    content = record.content()
    if not content:
        return []
    mentions = detect_mentions(content, gazetteer, cfg.role_templates, record.record_id)
    results: list[LinkResult] = []
    for mention in mentions:
        candidates = gen_candidates(index, mention, cfg.k)
        context = build_context(record, mention)
        results.append(
            disambiguate(mention, context, candidates, entities, provider, cfg.tau_nil)
        )
    return results


def index_record(
    kg: KnowledgeGraph,
    record: HeteroRecord,
    index: InvertedIndex,
    provider: EmbeddingProvider,
    cfg: LinkerConfig | None = None,
) -> list[LinkResult]:
    """Link and store: the record becomes an ExternalDatum entity and every
    non-NIL link becomes an indexedBy triple. Rerun on identical input is
    idempotent."""
    gazetteer = concept_gazetteer(kg)
    results = link_record(record, index, kg.entities, gazetteer, provider, cfg)
    datum_iri = f"edukg://externalDatum/{slugify(record.record_id)}"
    with kg.lock:
        if datum_iri not in kg.entities:
            kg.add_entity(
                Entity(
                    iri=datum_iri,
                    label=record.record_id,
                    description=record.content()[:200],
                    class_iri=CLASS_EXTERNAL_DATUM,
                    kind="externalDatum",
                    data_format=record.kind,
                )
            )
        for result in results:
            if result.resolved is None:
                continue
            kg.add_triple(
                Triple(
                    subject=datum_iri,
                    predicate=PROP_INDEXED_BY,
                    obj=result.resolved,
                    provenance=Provenance(
                        source_id=record.record_id,
                        method="el",
                        confidence=min(1.0, max(0.0, result.score)),
                    ),
                )
            )
    return results
