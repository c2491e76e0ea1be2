import pytest

from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, Triple
from kgforge.model.ontology import (
    CLASS_CONCEPT,
    DATATYPE,
    OBJECT,
    Ontology,
    OntologyClass,
    PropertyDef,
)
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def school_ontology() -> Ontology:
    return Ontology(
        classes=[
            OntologyClass("edukg://class/HistoricalEvent", "Historical Event", parent=CLASS_CONCEPT),
        ],
        properties=[
            PropertyDef("edukg://prop/startingTime", "starting time", DATATYPE, range="text"),
            PropertyDef("edukg://prop/relatedTo", "related to", OBJECT),
            PropertyDef("edukg://prop/locatedIn", "located in", OBJECT, range=CLASS_CONCEPT),
        ],
    )


@pytest.fixture
def small_graph(school_ontology) -> KnowledgeGraph:
    kg = KnowledgeGraph(school_ontology)
    kg.add_entity(
        Entity(
            iri="edukg://concept/french-revolution",
            label="French Revolution",
            aliases={"Revolution of 1789"},
            description="political upheaval in late 18th century France",
            class_iri="edukg://class/HistoricalEvent",
            kind="concept",
        )
    )
    kg.add_entity(
        Entity(
            iri="edukg://concept/europe",
            label="Europe",
            description="continent",
            class_iri=CLASS_CONCEPT,
            kind="concept",
        )
    )
    kg.add_triple(
        Triple(
            subject="edukg://concept/french-revolution",
            predicate="edukg://prop/startingTime",
            obj=Literal("1789"),
            provenance=Provenance("seed", "infobox", 0.9),
        )
    )
    kg.add_triple(
        Triple(
            subject="edukg://concept/french-revolution",
            predicate="edukg://prop/locatedIn",
            obj="edukg://concept/europe",
            provenance=Provenance("seed", "human", 1.0),
        )
    )
    return kg
