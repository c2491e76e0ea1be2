"""Import related concepts from an aligned external graph.

A local entity e aligned to external entity ê scores each external neighbor
candidate c as

    score(c) = Sim(ê, c) * (1/|N(e)|) * sum over n in N(e) of w_n * Sim(n, c)

where N(e) are e's neighbors in the local graph, Sim is provider-embedding
cosine over "label description" text, and w_n comes from a per-relation
weight table (default 1.0; a neighbor reachable over several predicates
takes the maximum weight). Candidates above the threshold are imported as
concepts, each with an alignment triple back to its external iri.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from kgforge.errors import IsolatedEntity
from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, Triple
from kgforge.model.ontology import PROP_EXTERNAL_EQUIVALENT
from kgforge.textindex.embedding import EmbeddingProvider, embed_sentence, get_provider
from kgforge.textindex.vectors import cosine_dense


@dataclass(frozen=True)
class ExternalAlignment:
    local_iri: str
    external_iri: str
    neighbor_weights: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for rel, w in self.neighbor_weights.items():
            if w < 0:
                raise ValueError(f"weight for {rel} must be >= 0, got {w}")

    def weight(self, relation: str) -> float:
        return self.neighbor_weights.get(relation, 1.0)


def load_alignments(path: "str | Path") -> list[ExternalAlignment]:
    rows = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        ExternalAlignment(
            local_iri=r["local"],
            external_iri=r["external"],
            neighbor_weights=dict(r.get("weights", {})),
        )
        for r in rows
    ]


def _entity_text(e: Entity) -> str:
    return f"{e.label} {e.description}".strip()


def _sim(provider: EmbeddingProvider, a: np.ndarray, e: Entity) -> float:
    return cosine_dense(a, embed_sentence(provider, _entity_text(e)))


def local_neighbor_weights(
    kg: KnowledgeGraph, alignment: ExternalAlignment
) -> dict[str, float]:
    """Neighbor iri -> effective weight; max over connecting predicates."""
    weights: dict[str, float] = {}
    for predicate, neighbor in kg.neighbors(alignment.local_iri):
        w = alignment.weight(predicate)
        weights[neighbor] = max(weights.get(neighbor, 0.0), w)
    return weights


def expansion_score(
    alignment: ExternalAlignment,
    candidate: Entity,
    kg: KnowledgeGraph,
    ext_kg: KnowledgeGraph,
    provider: EmbeddingProvider,
) -> float:
    neighbors = local_neighbor_weights(kg, alignment)
    if not neighbors:
        raise IsolatedEntity(f"{alignment.local_iri} has no neighbors")
    cand_vec = embed_sentence(provider, _entity_text(candidate))
    ext_anchor = ext_kg.entities[alignment.external_iri]
    lead = _sim(provider, cand_vec, ext_anchor)
    acc = 0.0
    for neighbor_iri in sorted(neighbors):
        acc += neighbors[neighbor_iri] * _sim(provider, cand_vec, kg.entities[neighbor_iri])
    return lead * acc / len(neighbors)


@dataclass
class ExpansionReport:
    added: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"added": list(self.added), "warnings": list(self.warnings)}


def _already_aligned(kg: KnowledgeGraph, external_iri: str) -> bool:
    hits = kg.triples_of(predicate=PROP_EXTERNAL_EQUIVALENT, obj=Literal(external_iri))
    return bool(hits)


def expand_concepts(
    kg: KnowledgeGraph,
    ext_kg: KnowledgeGraph,
    alignments: list[ExternalAlignment],
    theta: float = 0.8,
    provider: EmbeddingProvider | None = None,
) -> ExpansionReport:
    """Import every external neighbor scoring strictly above theta."""
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must be in [0, 1], got {theta}")
    provider = provider or get_provider()
    report = ExpansionReport()
    with kg.lock:
        for alignment in alignments:
            if alignment.local_iri not in kg.entities:
                report.warnings.append(f"unknown local entity {alignment.local_iri}")
                continue
            if alignment.external_iri not in ext_kg.entities:
                report.warnings.append(f"unknown external entity {alignment.external_iri}")
                continue
            if not local_neighbor_weights(kg, alignment):
                report.warnings.append(
                    f"{alignment.local_iri} has no neighbors; alignment skipped"
                )
                continue
            candidate_iris = sorted(
                {n for _, n in ext_kg.neighbors(alignment.external_iri)}
            )
            for ext_iri in candidate_iris:
                candidate = ext_kg.entities.get(ext_iri)
                if candidate is None or _already_aligned(kg, ext_iri):
                    continue
                score = expansion_score(alignment, candidate, kg, ext_kg, provider)
                if score <= theta:
                    continue
                imported = kg.create_entity(
                    "concept", candidate.label, description=candidate.description
                )
                kg.add_triple(
                    Triple(
                        subject=imported.iri,
                        predicate=PROP_EXTERNAL_EQUIVALENT,
                        obj=Literal(ext_iri),
                        provenance=Provenance(
                            source_id=alignment.external_iri,
                            method="expansion",
                            confidence=min(1.0, max(0.0, score)),
                        ),
                    )
                )
                report.added.append(
                    {"iri": imported.iri, "external": ext_iri, "score": score}
                )
    return report
