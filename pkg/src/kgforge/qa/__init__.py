from kgforge.qa.engine import QaResult, answer, answer_question, plan_for
from kgforge.qa.sparql import (
    PROPERTY_LOOKUP,
    ROLE_LOOKUP,
    QueryPlan,
    execute_patterns,
    execute_plan,
    parse_plan,
    parse_query,
    render_plan,
)
from kgforge.qa.templates import (
    TARGET_PROPERTY,
    TARGET_ROLE,
    Linker,
    MatchedQuestion,
    QuestionTemplate,
    graph_linker,
    load_templates,
    match_template,
)

__all__ = [
    "QaResult",
    "answer",
    "answer_question",
    "plan_for",
    "PROPERTY_LOOKUP",
    "ROLE_LOOKUP",
    "QueryPlan",
    "execute_patterns",
    "execute_plan",
    "parse_plan",
    "parse_query",
    "render_plan",
    "TARGET_PROPERTY",
    "TARGET_ROLE",
    "Linker",
    "MatchedQuestion",
    "QuestionTemplate",
    "graph_linker",
    "load_templates",
    "match_template",
]
