"""Question answering: template match, plan rendering, and execution."""

from __future__ import annotations

from dataclasses import dataclass

from kgforge.model.graph import KnowledgeGraph
from kgforge.qa.sparql import (
    PROPERTY_LOOKUP,
    ROLE_LOOKUP,
    QueryPlan,
    execute_plan,
    render_plan,
)
from kgforge.qa.templates import (
    TARGET_PROPERTY,
    Linker,
    MatchedQuestion,
    QuestionTemplate,
    graph_linker,
    match_template,
)


@dataclass(frozen=True)
class QaResult:
    plan: QueryPlan
    answers: tuple[str, ...]
    matched: MatchedQuestion

    def to_dict(self) -> dict:
        target = (
            {"kind": "property", "iri": self.plan.predicate_iri}
            if self.plan.kind == PROPERTY_LOOKUP
            else {"kind": "role", "roleType": self.plan.role_type.value}
        )
        return {
            "matched": True,
            "answers": list(self.answers),
            "plan": {
                "kind": self.plan.kind,
                "entityIri": self.plan.entity_iri,
                "target": target,
                "rendered": render_plan(self.plan),
            },
            "templateId": self.matched.template.id,
        }


def plan_for(matched: MatchedQuestion) -> QueryPlan:
    template = matched.template
    if template.target_kind == TARGET_PROPERTY:
        return QueryPlan(
            kind=PROPERTY_LOOKUP,
            entity_iri=matched.entity_iri,
            predicate_iri=template.property_iri,
        )
    return QueryPlan(
        kind=ROLE_LOOKUP,
        entity_iri=matched.entity_iri,
        role_type=template.role_type,
    )


def answer_question(
    kg: KnowledgeGraph,
    question: str,
    templates: tuple[QuestionTemplate, ...],
    linker: Linker | None = None,
) -> QaResult:
    """NoTemplate and EntityUnresolved propagate; an empty answer list means
    the plan matched but the store holds nothing for it."""
    linker = linker or graph_linker(kg)
    matched = match_template(question, templates, linker)
    plan = plan_for(matched)
    answers = tuple(execute_plan(kg, plan))
    return QaResult(plan=plan, answers=answers, matched=matched)


def answer(
    kg: KnowledgeGraph,
    question: str,
    templates: tuple[QuestionTemplate, ...],
    linker: Linker | None = None,
) -> list[str]:
    return list(answer_question(kg, question, templates, linker).answers)
