"""Question templates: trigger keywords route to a datatype property or a
rhetorical-role lookup; the entity slot is linked from the remaining text."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from kgforge.errors import EntityUnresolved, NoTemplate
from kgforge.model.graph import KnowledgeGraph, RoleType
from kgforge.textmatch import find_term_spans

TARGET_PROPERTY = "property"
TARGET_ROLE = "role"


@dataclass(frozen=True)
class QuestionTemplate:
    id: str
    trigger_keywords: tuple[str, ...]
    target_kind: str
    property_iri: str | None = None
    role_type: RoleType | None = None
    priority: int = 0

    def __post_init__(self):
        if not self.trigger_keywords:
            raise ValueError(f"template {self.id} has no trigger keywords")
        if self.target_kind == TARGET_PROPERTY and not self.property_iri:
            raise ValueError(f"template {self.id} targets a property but names none")
        if self.target_kind == TARGET_ROLE and self.role_type is None:
            raise ValueError(f"template {self.id} targets a role but names none")
        if self.target_kind not in (TARGET_PROPERTY, TARGET_ROLE):
            raise ValueError(f"unknown target kind {self.target_kind!r}")


def load_templates(path: "str | Path") -> tuple[QuestionTemplate, ...]:
    rows = json.loads(Path(path).read_text(encoding="utf-8"))
    out = []
    for r in rows:
        target = r["target"]
        out.append(
            QuestionTemplate(
                id=r["id"],
                trigger_keywords=tuple(r["triggers"]),
                target_kind=target["kind"],
                property_iri=target.get("iri"),
                role_type=RoleType(target["roleType"]) if "roleType" in target else None,
                priority=int(r.get("priority", 0)),
            )
        )
    return tuple(sorted(out, key=lambda t: t.priority))


DEFAULT_TEMPLATES: tuple[QuestionTemplate, ...] = (
    QuestionTemplate(
        id="role.definition",
        trigger_keywords=("definition of", "what is the definition", "define"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Definition,
        priority=10,
    ),
    QuestionTemplate(
        id="role.process",
        trigger_keywords=("steps of", "process of", "how to perform"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Process,
        priority=11,
    ),
    QuestionTemplate(
        id="role.mechanism",
        trigger_keywords=("mechanism of", "how does", "how do"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Mechanism,
        priority=12,
    ),
    QuestionTemplate(
        id="role.reason",
        trigger_keywords=("reason for", "cause of", "causes of", "why does"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Reason,
        priority=13,
    ),
    QuestionTemplate(
        id="role.effect",
        trigger_keywords=("effect of", "effects of", "consequence of"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Effect,
        priority=14,
    ),
    QuestionTemplate(
        id="role.significance",
        trigger_keywords=("significance of", "importance of"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Significance,
        priority=15,
    ),
    QuestionTemplate(
        id="role.condition",
        trigger_keywords=("condition of", "conditions for", "under what condition"),
        target_kind=TARGET_ROLE,
        role_type=RoleType.Condition,
        priority=16,
    ),
)


# linker: text -> entity iri or None
Linker = Callable[[str], "str | None"]


def graph_linker(kg: KnowledgeGraph) -> Linker:
    """Longest label/alias occurrence in the text wins; ties by iri."""
    terms: dict[str, str] = {}
    for iri in sorted(kg.entities):
        e = kg.entities[iri]
        terms.setdefault(e.label, iri)
        for alias in sorted(e.aliases):
            terms.setdefault(alias, iri)

    def link(text: str) -> str | None:
        spans = find_term_spans(text, terms)
        if not spans:
            return None
        s, e, _surface, term = max(spans, key=lambda row: (row[1] - row[0], -row[0]))
        return terms[term]

    return link


@dataclass(frozen=True)
class MatchedQuestion:
    template: QuestionTemplate
    entity_iri: str
    trigger: str
    remaining: str


def match_template(
    question: str,
    templates: tuple[QuestionTemplate, ...],
    linker: Linker,
) -> MatchedQuestion:
    """First template in priority order whose trigger occurs in the question;
    the entity is linked from the question text minus the trigger."""
    if not templates:
        raise NoTemplate("no templates registered")
    q_low = question.lower()
    for template in sorted(templates, key=lambda t: t.priority):
        for trigger in template.trigger_keywords:
            at = q_low.find(trigger.lower())
            if at < 0:
                continue
            remaining = question[:at] + " " + question[at + len(trigger) :]
            remaining = re.sub(r"\s+", " ", remaining).strip()
            entity = linker(remaining)
            if entity is None:
                raise EntityUnresolved(
                    f"no entity found in {remaining!r} for template {template.id}"
                )
            return MatchedQuestion(
                template=template, entity_iri=entity, trigger=trigger, remaining=remaining
            )
    raise NoTemplate(f"no template trigger occurs in {question!r}")
