import json
import math
import random

import numpy as np
import pytest

import oracles
from kgforge.consolidation.expansion import (
    ExternalAlignment,
    expand_concepts,
    expansion_score,
    load_alignments,
    local_neighbor_weights,
)
from kgforge.errors import IsolatedEntity
from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, Triple
from kgforge.model.ontology import (
    CLASS_CONCEPT,
    OBJECT,
    PROP_EXTERNAL_EQUIVALENT,
    Ontology,
    PropertyDef,
)
from kgforge.textindex.embedding import HashedTrigramProvider, embed_sentence
from kgforge.textindex.vectors import cosine_dense

LINK = "edukg://prop/relatedTo"
FR = "edukg://concept/french-revolution"
EU = "edukg://concept/europe"


def graph_with_link() -> Ontology:
    return Ontology(properties=[PropertyDef(LINK, "related to", OBJECT)])


def concept(iri, label, description=""):
    return Entity(iri=iri, label=label, kind="concept", class_iri=CLASS_CONCEPT, description=description)


def linked(kg, a, b, predicate=LINK):
    kg.add_triple(Triple(a, predicate, b, Provenance("seed", "human", 1.0)))


def make_local(neighbor_labels):
    kg = KnowledgeGraph(graph_with_link())
    kg.add_entity(concept(FR, "French Revolution", "revolution in France"))
    for i, label in enumerate(neighbor_labels):
        iri = f"edukg://concept/n{i}"
        kg.add_entity(concept(iri, label, f"about {label}"))
        linked(kg, FR, iri)
    return kg


def make_external(candidate_labels):
    ext = KnowledgeGraph(graph_with_link())
    ext.add_entity(concept("ext://fr", "Revolution francaise", "the same event"))
    for i, label in enumerate(candidate_labels):
        iri = f"ext://c{i}"
        ext.add_entity(concept(iri, label, f"external notes on {label}"))
        linked(ext, "ext://fr", iri)
    return ext


class StubProvider:
    """Planar unit vectors per text: cosine(a, b) == cos(angle_a - angle_b)."""

    dim = 2

    def __init__(self, angles: dict[str, float]):
        self.angles = angles

    def embed(self, texts):
        out = np.zeros((len(texts), 2))
        for i, t in enumerate(texts):
            a = self.angles[t]
            out[i] = (math.cos(a), math.sin(a))
        return out


# --- alignment plumbing ------------------------------------------------------


def test_alignment_weight_defaults_to_one():
    a = ExternalAlignment(FR, "ext://fr", {"edukg://prop/other": 0.3})
    assert a.weight("edukg://prop/other") == 0.3
    assert a.weight(LINK) == 1.0


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        ExternalAlignment(FR, "ext://fr", {LINK: -0.1})


def test_neighbor_weight_takes_max_over_predicates(small_graph):
    # europe is reachable from french-revolution over locatedIn; add a second
    # predicate and check the stronger weight wins.
    linked(small_graph, FR, EU, predicate="edukg://prop/relatedTo")
    alignment = ExternalAlignment(
        FR, "ext://fr",
        {"edukg://prop/locatedIn": 0.2, "edukg://prop/relatedTo": 0.7},
    )
    weights = local_neighbor_weights(small_graph, alignment)
    assert weights[EU] == 0.7


def test_load_alignments(tmp_path):
    path = tmp_path / "alignments.json"
    path.write_text(json.dumps([
        {"local": FR, "external": "ext://fr", "weights": {LINK: 0.5}},
        {"local": EU, "external": "ext://eu"},
    ]))
    got = load_alignments(path)
    assert got[0].neighbor_weights == {LINK: 0.5}
    assert got[1].neighbor_weights == {}


# --- scoring -----------------------------------------------------------------


def test_isolated_entity_raises():
    kg = KnowledgeGraph(graph_with_link())
    kg.add_entity(concept(FR, "French Revolution"))
    ext = make_external(["storming"])
    alignment = ExternalAlignment(FR, "ext://fr")
    with pytest.raises(IsolatedEntity):
        expansion_score(alignment, ext.entities["ext://c0"], kg, ext, HashedTrigramProvider(dim=16))


def test_score_exact_value_with_stub_provider():
    kg = make_local(["alpha"])
    ext = make_external(["beta"])
    provider = StubProvider({
        "Revolution francaise the same event": 0.0,   # anchor
        "beta external notes on beta": 0.0,           # candidate: sim(anchor)=1
        "alpha about alpha": math.pi / 3,             # neighbor: sim=cos(pi/3)=0.5
        "French Revolution revolution in France": 0.1,
    })
    alignment = ExternalAlignment(FR, "ext://fr", {LINK: 0.5})
    got = expansion_score(alignment, ext.entities["ext://c0"], kg, ext, provider)
    # 1.0 * (1/1) * (0.5 weight * 0.5 sim)
    assert got == pytest.approx(0.25, abs=1e-12)


def test_score_matches_independent_oracle():
    rng = random.Random(515)
    provider = HashedTrigramProvider(dim=64)
    for trial in range(25):
        n_neighbors = rng.randint(1, 8)
        labels = [f"topic {rng.randrange(1000)} {t}" for t in range(n_neighbors)]
        kg = make_local(labels)
        ext = make_external([f"candidate {trial}"])
        weights = {LINK: rng.choice([0.25, 0.5, 1.0, 2.0])}
        alignment = ExternalAlignment(FR, "ext://fr", weights)
        candidate = ext.entities["ext://c0"]

        got = expansion_score(alignment, candidate, kg, ext, provider)

        def emb(e):
            return embed_sentence(provider, f"{e.label} {e.description}".strip())

        lead = cosine_dense(emb(ext.entities["ext://fr"]), emb(candidate))
        terms = [
            (weights[LINK], cosine_dense(emb(kg.entities[f"edukg://concept/n{i}"]), emb(candidate)))
            for i in range(n_neighbors)
        ]
        want = oracles.expansion_score(lead, terms)
        assert got == pytest.approx(want, abs=1e-12)


# --- graph expansion ---------------------------------------------------------


def expansion_setup(neighbor_sim: float, weight: float = 1.0):
    """One local neighbor, one external candidate, controllable score."""
    kg = make_local(["alpha"])
    ext = make_external(["beta"])
    provider = StubProvider({
        "Revolution francaise the same event": 0.0,
        "beta external notes on beta": 0.0,
        "alpha about alpha": math.acos(neighbor_sim),
        "French Revolution revolution in France": 0.2,
    })
    return kg, ext, [ExternalAlignment(FR, "ext://fr", {LINK: weight})], provider


def test_threshold_is_strict():
    kg, ext, alignments, provider = expansion_setup(neighbor_sim=1.0, weight=0.5)
    # score is exactly 0.5
    report = expand_concepts(kg, ext, alignments, theta=0.5, provider=provider)
    assert report.added == []
    kg2, ext2, alignments2, provider2 = expansion_setup(neighbor_sim=1.0, weight=0.5)
    report2 = expand_concepts(kg2, ext2, alignments2, theta=0.45, provider=provider2)
    assert [a["external"] for a in report2.added] == ["ext://c0"]
    assert report2.added[0]["score"] == pytest.approx(0.5)


def test_import_creates_concept_with_alignment_triple():
    kg, ext, alignments, provider = expansion_setup(neighbor_sim=1.0)
    report = expand_concepts(kg, ext, alignments, theta=0.4, provider=provider)
    iri = report.added[0]["iri"]
    assert kg.entities[iri].label == "beta"
    assert kg.entities[iri].description == "external notes on beta"
    hits = kg.triples_of(iri, PROP_EXTERNAL_EQUIVALENT)
    assert [t.obj for t in hits] == [Literal("ext://c0")]
    assert hits[0].provenance.method == "expansion"
    assert hits[0].provenance.source_id == "ext://fr"


def test_expansion_idempotent():
    kg, ext, alignments, provider = expansion_setup(neighbor_sim=1.0)
    first = expand_concepts(kg, ext, alignments, theta=0.4, provider=provider)
    assert len(first.added) == 1
    rev = kg.revision
    second = expand_concepts(kg, ext, alignments, theta=0.4, provider=provider)
    assert second.added == []
    assert kg.revision == rev


def test_import_mints_suffixed_iri_on_label_collision():
    kg, ext, alignments, provider = expansion_setup(neighbor_sim=1.0)
    kg.add_entity(concept("edukg://concept/beta", "beta local", "unrelated"))
    # force slug collision: the import slugs to "beta" which is taken
    report = expand_concepts(kg, ext, alignments, theta=0.4, provider=provider)
    assert report.added[0]["iri"] == "edukg://concept/beta-2"


def test_warnings_for_unknown_and_isolated():
    kg = make_local(["alpha"])
    kg.add_entity(concept("edukg://concept/lonely", "Lonely"))
    ext = make_external(["beta"])
    alignments = [
        ExternalAlignment("edukg://concept/ghost", "ext://fr"),
        ExternalAlignment(FR, "ext://ghost"),
        ExternalAlignment("edukg://concept/lonely", "ext://fr"),
    ]
    report = expand_concepts(kg, ext, alignments, theta=0.99, provider=HashedTrigramProvider(dim=16))
    assert len(report.warnings) == 3
    assert "unknown local" in report.warnings[0]
    assert "unknown external" in report.warnings[1]
    assert "no neighbors" in report.warnings[2]
    assert report.added == []


def test_theta_out_of_range_rejected():
    kg = make_local(["alpha"])
    ext = make_external(["beta"])
    for bad in (-0.01, 1.01):
        with pytest.raises(ValueError):
            expand_concepts(kg, ext, [], theta=bad)


def test_raising_theta_never_adds_imports():
    rng = random.Random(8080)
    provider = HashedTrigramProvider(dim=32)
    for _ in range(10):
        labels = [f"w{rng.randrange(50)} n{t}" for t in range(rng.randint(1, 4))]
        cands = [f"c{rng.randrange(50)} x{t}" for t in range(rng.randint(1, 5))]
        lo, hi = sorted(rng.uniform(0.0, 1.0) for _ in range(2))
        kg_lo = make_local(labels)
        kg_hi = make_local(labels)
        alignments = [ExternalAlignment(FR, "ext://fr")]
        added_lo = {
            a["external"]
            for a in expand_concepts(kg_lo, make_external(cands), alignments, theta=lo, provider=provider).added
        }
        added_hi = {
            a["external"]
            for a in expand_concepts(kg_hi, make_external(cands), alignments, theta=hi, provider=provider).added
        }
        assert added_hi <= added_lo
