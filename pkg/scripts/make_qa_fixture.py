#!/usr/bin/env python3
"""Seed the QA fixture graph bundled under tests/data/qa/: two concepts,
one datatype fact (a starting time) and one Definition role, enough to
exercise both query plans end to end."""

from __future__ import annotations

import argparse
from pathlib import Path

from kgforge.consolidation.roles import RoleDraft, add_role
from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, RoleType
from kgforge.model.ontology import CLASS_CONCEPT, DATATYPE, Ontology, PropertyDef
from kgforge.model.ntriples import write_graph

NEWTON_DEFINITION = (
    "An object remains at rest, or in uniform motion in a straight line, "
    "unless acted upon by an external force."
)


def build() -> KnowledgeGraph:
    onto = Ontology(
        properties=[
            PropertyDef("edukg://prop/startingTime", "starting time", DATATYPE, range="text"),
        ]
    )
    kg = KnowledgeGraph(onto)
    kg.add_entity(
        Entity(
            iri="edukg://concept/french-revolution",
            label="French Revolution",
            description="political upheaval in late 18th century France",
            class_iri=CLASS_CONCEPT,
            kind="concept",
        )
    )
    kg.add_entity(
        Entity(
            iri="edukg://concept/newtons-first-law",
            label="Newton's first law of motion",
            aliases={"law of inertia"},
            description="foundational principle of classical mechanics",
            class_iri=CLASS_CONCEPT,
            kind="concept",
        )
    )
    from kgforge.model.graph import Triple

    kg.add_triple(
        Triple(
            subject="edukg://concept/french-revolution",
            predicate="edukg://prop/startingTime",
            obj=Literal("1789"),
            provenance=Provenance("seed", "infobox", 0.9),
        )
    )
    add_role(
        kg,
        RoleDraft(
            role_type=RoleType.Definition,
            content=NEWTON_DEFINITION,
            parent_iri="edukg://concept/newtons-first-law",
        ),
        source_id="seed",
    )
    return kg


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=str(Path(__file__).resolve().parent.parent / "tests" / "data" / "qa"),
    )
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    kg = build()
    write_graph(kg, out / "graph.nt", out / "graph.meta.json")
    print(f"wrote {len(kg.entities)} entities, revision {kg.revision} -> {out}")


if __name__ == "__main__":
    main()
