"""Rhetorical-role recognition from datatype values, and role-concept linking.

Each role type owns an ordered set of trigger patterns; a value matching
several templates takes the one with the best (lowest) priority. Recognized
roles become first-class entities holding their parent concept, role type,
and full content; concept labels spotted inside the content become
mentionsConcept links, excluding the parent itself.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, RoleType, Triple
from kgforge.model.ontology import (
    PROP_CONTENT,
    PROP_MENTIONS_CONCEPT,
    PROP_PARENT_CONCEPT,
    PROP_ROLE_TYPE,
)
from kgforge.textmatch import find_term_spans


@dataclass(frozen=True)
class RoleTemplate:
    role_type: RoleType
    patterns: tuple[str, ...]
    priority: int

    def matches(self, text: str) -> bool:
        return any(re.search(p, text, re.IGNORECASE) for p in self.patterns)


DEFAULT_ROLE_TEMPLATES: tuple[RoleTemplate, ...] = (
    RoleTemplate(RoleType.Definition, (r"\bis defined as\b", r"\brefers to\b", r"\bdefinition of\b"), 1),
    RoleTemplate(RoleType.Process, (r"\bstep\s*\d+\s*[.:]", r"\bfirst\b.*\bthen\b"), 2),
    RoleTemplate(RoleType.Mechanism, (r"\bworks? by\b", r"\bmechanism of\b"), 3),
    RoleTemplate(RoleType.Reason, (r"\bcauses?\b(?!\s+and\s+effect)", r"\bbecause\b", r"\breasons? (?:of|for|why)\b"), 4),
    RoleTemplate(RoleType.Effect, (r"\beffects?\b", r"\bresults? in\b", r"\bconsequences? of\b"), 5),
    RoleTemplate(RoleType.Significance, (r"\bimportant\b", r"\bsignificance\b", r"\bvital\b"), 6),
    RoleTemplate(RoleType.Condition, (r"\bmust be\b", r"\bonly (?:if|when)\b", r"\bconditions? (?:of|for)\b"), 7),
)


def validate_templates(templates: tuple[RoleTemplate, ...]) -> None:
    priorities = [t.priority for t in templates]
    if len(set(priorities)) != len(priorities):
        raise ValueError("template priorities must be unique")
    covered = {t.role_type for t in templates}
    missing = set(RoleType) - covered
    if missing:
        raise ValueError(f"role types without templates: {sorted(r.value for r in missing)}")
    for t in templates:
        if not t.patterns:
            raise ValueError(f"template {t.role_type.value} has no patterns")


def load_role_templates(path: "str | Path") -> tuple[RoleTemplate, ...]:
    rows = json.loads(Path(path).read_text(encoding="utf-8"))
    templates = tuple(
        RoleTemplate(
            role_type=RoleType(r["roleType"]),
            patterns=tuple(r["patterns"]),
            priority=int(r["priority"]),
        )
        for r in rows
    )
    validate_templates(templates)
    return templates


@dataclass(frozen=True)
class RoleDraft:
    role_type: RoleType
    content: str
    parent_iri: str


def classify_role(text: str, templates: tuple[RoleTemplate, ...] = DEFAULT_ROLE_TEMPLATES) -> RoleType | None:
    """Best-priority matching template's role type, or None."""
    best: RoleTemplate | None = None
    for t in templates:
        if t.matches(text) and (best is None or t.priority < best.priority):
            best = t
    return best.role_type if best else None


def recognize_roles(
    parent_iri: str,
    datatype_values: list[str],
    templates: tuple[RoleTemplate, ...] = DEFAULT_ROLE_TEMPLATES,
) -> list[RoleDraft]:
    drafts: list[RoleDraft] = []
    for value in datatype_values:
        role_type = classify_role(value, templates)
        if role_type is not None:
            drafts.append(RoleDraft(role_type=role_type, content=value, parent_iri=parent_iri))
    return drafts


def add_role(kg: KnowledgeGraph, draft: RoleDraft, source_id: str = "roles") -> Entity:
    """Promote a draft to a RhetoricalRole entity with its three core triples."""
    label = draft.content if len(draft.content) <= 60 else draft.content[:57] + "..."
    with kg.lock:
        role = kg.create_entity(
            "rhetoricalRole",
            label,
            role_type=draft.role_type,
            description=draft.content,
        )
        prov = Provenance(source_id=source_id, method="ner", confidence=1.0)
        kg.add_triple(Triple(role.iri, PROP_PARENT_CONCEPT, draft.parent_iri, prov))
        kg.add_triple(Triple(role.iri, PROP_ROLE_TYPE, Literal(draft.role_type.value), prov))
        kg.add_triple(Triple(role.iri, PROP_CONTENT, Literal(draft.content), prov))
    return role


def link_roles(
    role_iri: str,
    kg: KnowledgeGraph,
    source_id: str = "roles",
) -> list[Triple]:
    """mentionsConcept triples for every concept named in the role's content.

    Longest-match, non-overlapping; the role's own parent concept is excluded.
    """
    if role_iri not in kg.entities:
        raise KeyError(f"unknown role entity {role_iri}")
    content_triples = kg.triples_of(subject=role_iri, predicate=PROP_CONTENT)
    if not content_triples:
        return []
    content = content_triples[0].obj.lexical
    parents = {
        t.obj for t in kg.triples_of(subject=role_iri, predicate=PROP_PARENT_CONCEPT)
    }
    terms: dict[str, str] = {}
    for iri in sorted(kg.entities):
        e = kg.entities[iri]
        if e.kind != "concept" or iri in parents:
            continue
        terms[e.label] = iri
        for alias in e.aliases:
            terms[alias] = iri
    added: list[Triple] = []
    seen: set[str] = set()
    with kg.lock:
        for _s, _e, _surface, term in find_term_spans(content, terms):
            target = terms[term]
            if target in seen:
                continue
            seen.add(target)
            t = Triple(
                subject=role_iri,
                predicate=PROP_MENTIONS_CONCEPT,
                obj=target,
                provenance=Provenance(source_id=source_id, method="el", confidence=1.0),
            )
            if kg.add_triple(t):
                added.append(t)
    return added
