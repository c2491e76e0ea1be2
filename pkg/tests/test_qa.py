import pytest

from kgforge.consolidation.roles import RoleDraft, add_role
from kgforge.errors import EntityUnresolved, NoTemplate
from kgforge.model.graph import RoleType
from kgforge.model.ntriples import read_graph
from kgforge.qa.engine import answer, answer_question
from kgforge.qa.sparql import parse_plan
from kgforge.qa.templates import (
    DEFAULT_TEMPLATES,
    QuestionTemplate,
    graph_linker,
    load_templates,
    match_template,
)

FR = "edukg://concept/french-revolution"
EU = "edukg://concept/europe"


@pytest.fixture
def qa_graph(data_dir):
    return read_graph(data_dir / "qa" / "graph.nt", data_dir / "qa" / "graph.meta.json")


@pytest.fixture
def qa_templates(data_dir):
    return load_templates(data_dir / "qa" / "templates.json")


# --- template definitions ------------------------------------------------------


def test_template_validation():
    with pytest.raises(ValueError):
        QuestionTemplate("t", (), "property", property_iri="p://x")
    with pytest.raises(ValueError):
        QuestionTemplate("t", ("when",), "property")
    with pytest.raises(ValueError):
        QuestionTemplate("t", ("what",), "role")
    with pytest.raises(ValueError):
        QuestionTemplate("t", ("what",), "lookup")


def test_load_templates_sorted_by_priority(qa_templates):
    assert [t.priority for t in qa_templates] == sorted(t.priority for t in qa_templates)
    ids = [t.id for t in qa_templates]
    assert ids[0] == "prop.startingTime"


def test_default_templates_cover_every_role_type():
    covered = {t.role_type for t in DEFAULT_TEMPLATES}
    assert covered == set(RoleType)


# --- linker ---------------------------------------------------------------------


def test_graph_linker_longest_span_wins(small_graph):
    link = graph_linker(small_graph)
    # "French Revolution" (17 chars) beats "Europe" (6 chars)
    assert link("the French Revolution in Europe") == FR
    assert link("only Europe here") == EU
    assert link("nothing known") is None


def test_graph_linker_sees_aliases(small_graph):
    link = graph_linker(small_graph)
    assert link("during the Revolution of 1789 taxes rose") == FR


# --- template matching ----------------------------------------------------------


def test_match_template_picks_priority_order(small_graph, qa_templates):
    # "starting time" is priority 1 and appears alongside a role trigger
    matched = match_template(
        "What is the starting time of the French Revolution", qa_templates, graph_linker(small_graph)
    )
    assert matched.template.id == "prop.startingTime"
    assert matched.entity_iri == FR
    assert matched.trigger == "starting time of"


def test_match_template_removes_trigger_before_linking(small_graph, qa_templates):
    matched = match_template(
        "what is the content of 'French Revolution'", qa_templates, graph_linker(small_graph)
    )
    assert matched.template.id == "role.content"
    assert "content of" not in matched.remaining.lower()
    assert matched.entity_iri == FR


def test_match_template_no_trigger(small_graph, qa_templates):
    with pytest.raises(NoTemplate):
        match_template("tell me something nice", qa_templates, graph_linker(small_graph))
    with pytest.raises(NoTemplate):
        match_template("any question", (), graph_linker(small_graph))


def test_match_template_entity_unresolved(small_graph, qa_templates):
    with pytest.raises(EntityUnresolved):
        match_template(
            "what is the starting time of the Meiji Restoration",
            qa_templates,
            graph_linker(small_graph),
        )


# --- end-to-end case studies -----------------------------------------------------


def test_time_question_answers_from_property(qa_graph, qa_templates):
    got = answer(qa_graph, "What is the starting time of the French Revolution", qa_templates)
    assert got == ["1789"]


def test_content_question_answers_from_role(qa_graph, qa_templates):
    got = answer(qa_graph, "what is the content of 'Newton's first law of motion'", qa_templates)
    assert got == [
        "An object remains at rest, or in uniform motion in a straight line, "
        "unless acted upon by an external force."
    ]


def test_result_carries_plan_and_rendered_query(qa_graph, qa_templates):
    result = answer_question(
        qa_graph, "What is the starting time of the French Revolution", qa_templates
    )
    d = result.to_dict()
    assert d["matched"] is True
    assert d["plan"]["kind"] == "propertyLookup"
    assert d["plan"]["entityIri"] == FR
    assert d["plan"]["target"] == {"kind": "property", "iri": "edukg://prop/startingTime"}
    assert d["templateId"] == "prop.startingTime"
    # the rendered query is itself legal and parses back to the same plan
    assert parse_plan(d["plan"]["rendered"]) == result.plan


def test_role_plan_renders_and_parses_back(qa_graph, qa_templates):
    result = answer_question(
        qa_graph, "what is the content of 'Newton's first law of motion'", qa_templates
    )
    assert result.plan.kind == "roleLookup"
    assert result.plan.role_type == RoleType.Definition
    assert parse_plan(result.plan.rendered) == result.plan


def test_matched_with_empty_answers(qa_graph, qa_templates):
    # template and entity resolve, but no triple holds the value
    result = answer_question(
        qa_graph, "what is the starting time of 'Newton's first law of motion'", qa_templates
    )
    assert result.answers == ()
    assert result.to_dict()["matched"] is True


def test_default_templates_route_roles(small_graph):
    add_role(small_graph, RoleDraft(RoleType.Effect, "One effect was reform.", FR))
    got = answer(small_graph, "what is the effect of the French Revolution?", DEFAULT_TEMPLATES)
    assert got == ["One effect was reform."]


def test_alias_in_question_links(qa_graph, qa_templates):
    got = answer(qa_graph, "what is the content of the law of inertia", qa_templates)
    assert len(got) == 1
    assert got[0].startswith("An object remains at rest")
