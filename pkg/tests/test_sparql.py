import pytest

from kgforge.consolidation.roles import RoleDraft, add_role
from kgforge.errors import QuerySyntaxError
from kgforge.model.graph import Literal, Provenance, RoleType, Triple
from kgforge.model.ontology import PROP_CONTENT, PROP_PARENT_CONCEPT, PROP_ROLE_TYPE
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

FR = "edukg://concept/french-revolution"
EU = "edukg://concept/europe"
START = "edukg://prop/startingTime"


# --- plan construction and rendering ------------------------------------------


def test_plan_validation():
    with pytest.raises(ValueError):
        QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=FR)
    with pytest.raises(ValueError):
        QueryPlan(kind=ROLE_LOOKUP, entity_iri=FR)


def test_render_property_lookup():
    plan = QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=FR, predicate_iri=START)
    assert plan.rendered == (
        f"SELECT ?v WHERE {{ <{FR}> <{START}> ?v }}"
    )


def test_render_role_lookup():
    plan = QueryPlan(kind=ROLE_LOOKUP, entity_iri=FR, role_type=RoleType.Definition)
    text = plan.rendered
    assert text.startswith("SELECT ?r ?content WHERE {")
    assert f"?r <{PROP_PARENT_CONCEPT}> <{FR}>" in text
    assert f'?r <{PROP_ROLE_TYPE}> "Definition"' in text
    assert f"?r <{PROP_CONTENT}> ?content" in text


@pytest.mark.parametrize(
    "plan",
    [
        QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=FR, predicate_iri=START),
        QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=EU, predicate_iri="edukg://prop/locatedIn"),
        QueryPlan(kind=ROLE_LOOKUP, entity_iri=FR, role_type=RoleType.Definition),
        QueryPlan(kind=ROLE_LOOKUP, entity_iri=EU, role_type=RoleType.Significance),
        QueryPlan(kind=ROLE_LOOKUP, entity_iri=FR, role_type=RoleType.Condition),
    ],
)
def test_parse_render_round_trip(plan):
    assert parse_plan(render_plan(plan)) == plan


# --- raw query parsing ---------------------------------------------------------


def test_parse_query_variables_patterns_limit():
    variables, patterns, limit = parse_query(
        'SELECT ?a ?b WHERE { ?a <p://x> ?b . ?b <p://y> "lit" } LIMIT 7'
    )
    assert variables == ["a", "b"]
    assert patterns == [
        (("var", "a"), ("iri", "p://x"), ("var", "b")),
        (("var", "b"), ("iri", "p://y"), ("lit", "lit")),
    ]
    assert limit == 7


def test_parse_query_keywords_case_insensitive():
    variables, patterns, limit = parse_query("select ?v where { <e://s> <p://p> ?v } limit 2")
    assert variables == ["v"]
    assert limit == 2


@pytest.mark.parametrize(
    "bad",
    [
        "ASK { ?s ?p ?o }",                                     # not SELECT
        "SELECT WHERE { <e://a> <p://b> ?v }",                  # no variables
        "SELECT ?v { <e://a> <p://b> ?v }",                     # missing WHERE
        "SELECT ?v WHERE { <e://a <p://b> ?v }",                # unterminated iri
        'SELECT ?v WHERE { <e://a> <p://b> "open }',            # unterminated literal
        "SELECT ?v WHERE { <e://a> <p://b> ?v LIMIT 3",         # missing brace
        "SELECT ?v WHERE { <e://a> <p://b> ?v } LIMIT x",       # non-integer limit
        "SELECT ?v WHERE { <e://a> <p://b> ?v } extra",         # trailing garbage
        "SELECT ?v WHERE { }",                                  # no pattern at all
        "SELECT ?v WHERE { <a://1> <b://1> ?v . <a://2> <b://2> ?v . "
        "<a://3> <b://3> ?v . <a://4> <b://4> ?v . <a://5> <b://5> ?v }",  # 5 patterns
    ],
)
def test_parse_query_rejects_malformed(bad):
    with pytest.raises(QuerySyntaxError):
        parse_query(bad)


def test_parse_plan_rejects_unknown_shapes():
    with pytest.raises(QuerySyntaxError):
        parse_plan("SELECT ?s WHERE { ?s <p://x> ?o }")  # subject var in 1-pattern
    with pytest.raises(QuerySyntaxError):
        parse_plan(
            "SELECT ?a ?b WHERE { ?a <p://x> ?b . ?b <p://y> ?a }"
        )  # two patterns
    with pytest.raises(QuerySyntaxError):
        parse_plan(
            "SELECT ?r ?content WHERE { "
            f"?r <{PROP_PARENT_CONCEPT}> <{FR}> . "
            f'?r <{PROP_ROLE_TYPE}> "NotARole" . '
            f"?r <{PROP_CONTENT}> ?content "
            "}"
        )


# --- execution -----------------------------------------------------------------


def test_execute_property_lookup(small_graph):
    plan = QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=FR, predicate_iri=START)
    assert execute_plan(small_graph, plan) == ["1789"]


def test_execute_object_property_returns_iri(small_graph):
    plan = QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=FR, predicate_iri="edukg://prop/locatedIn")
    assert execute_plan(small_graph, plan) == [EU]


def test_execute_empty_when_no_triples(small_graph):
    plan = QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=EU, predicate_iri=START)
    assert execute_plan(small_graph, plan) == []


def test_execute_role_lookup_joins_three_patterns(small_graph):
    add_role(small_graph, RoleDraft(RoleType.Definition, "The revolution is defined as an upheaval.", FR))
    add_role(small_graph, RoleDraft(RoleType.Effect, "One effect was broad reform.", FR))
    add_role(small_graph, RoleDraft(RoleType.Definition, "Europe refers to a continent.", EU))
    plan = QueryPlan(kind=ROLE_LOOKUP, entity_iri=FR, role_type=RoleType.Definition)
    assert execute_plan(small_graph, plan) == ["The revolution is defined as an upheaval."]


def test_execute_role_lookup_multiple_sorted(small_graph):
    add_role(small_graph, RoleDraft(RoleType.Effect, "b effect content.", FR))
    add_role(small_graph, RoleDraft(RoleType.Effect, "a effect content.", FR))
    plan = QueryPlan(kind=ROLE_LOOKUP, entity_iri=FR, role_type=RoleType.Effect)
    got = execute_plan(small_graph, plan)
    assert got == sorted(got)
    assert set(got) == {"a effect content.", "b effect content."}


def test_execute_patterns_respects_limit(small_graph):
    triples = [
        Triple(FR, START, Literal(f"v{i}"), Provenance("t", "human", 1.0))
        for i in range(5)
    ]
    for t in triples:
        small_graph.add_triple(t)
    variables, patterns, _ = parse_query(
        f"SELECT ?v WHERE {{ <{FR}> <{START}> ?v }}"
    )
    rows = execute_patterns(small_graph, variables, patterns, limit=2)
    # sorted rows: the seeded "1789" then "v0"
    assert rows == [("1789",), ("v0",)]


def test_execute_patterns_join_consistency(small_graph):
    # variable bound in pattern 1 must unify in pattern 2
    variables, patterns, _ = parse_query(
        "SELECT ?x WHERE { "
        f"<{FR}> <edukg://prop/locatedIn> ?x . "
        f"<{FR}> <edukg://prop/locatedIn> ?x "
        "}"
    )
    rows = execute_patterns(small_graph, variables, patterns)
    assert rows == [(EU,)]


def test_execute_patterns_literal_constant(small_graph):
    variables, patterns, _ = parse_query(
        f'SELECT ?s WHERE {{ ?s <{START}> "1789" }}'
    )
    assert execute_patterns(small_graph, variables, patterns) == [(FR,)]
    variables, patterns, _ = parse_query(
        f'SELECT ?s WHERE {{ ?s <{START}> "1790" }}'
    )
    assert execute_patterns(small_graph, variables, patterns) == []
