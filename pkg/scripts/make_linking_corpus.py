#!/usr/bin/env python3
"""Generate the synthetic linking corpus bundled under tests/data/linking/:
100 concept entities, 50 heterogeneous records cycling the three record
shapes, and the gold links implied by construction. Deterministic: a fixed
seed yields byte-identical output files."""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

from kgforge.linking.records import HeteroRecord, save_records
from kgforge.model.graph import Entity, KnowledgeGraph, slugify
from kgforge.model.ontology import CLASS_CONCEPT, Ontology
from kgforge.model.ntriples import write_graph

SEED = 20240813

# two-word labels; no bank word is a prefix of another, so no label is a
# substring of any other label or record filler
ADJECTIVES = [
    "amber", "brisk", "coastal", "dense", "eastern",
    "fluent", "granular", "hollow", "ionic", "jagged",
]
NOUNS = [
    "atom", "circuit", "enzyme", "glacier", "monsoon",
    "pendulum", "quartz", "tundra", "vector", "harbor",
]
TOPIC_WORDS = [
    "oscillation", "catalysis", "erosion", "polarity", "momentum",
    "diffusion", "sediment", "voltage", "salinity", "refraction",
    "torque", "entropy", "isotope", "plateau", "current",
]
FILLERS = [
    "The chapter reviews", "Students measure", "The figure depicts",
    "Field notes describe", "The experiment tracks",
]


def make_entities(rng: random.Random) -> list[Entity]:
    out = []
    for adj in ADJECTIVES:
        for noun in NOUNS:
            label = f"{adj} {noun}"
            words = rng.sample(TOPIC_WORDS, 3)
            description = f"{label} concerns {words[0]}, {words[1]} and {words[2]}"
            out.append(
                Entity(
                    iri=f"edukg://concept/{slugify(label)}",
                    label=label,
                    description=description,
                    class_iri=CLASS_CONCEPT,
                    kind="concept",
                )
            )
    return out


def make_records(
    rng: random.Random, entities: list[Entity]
) -> tuple[list[HeteroRecord], list[dict]]:
    targets = rng.sample(entities, 50)
    records: list[HeteroRecord] = []
    gold: list[dict] = []
    for i, entity in enumerate(targets):
        rid = f"rec{i:03d}"
        hint = entity.description.split(" concerns ", 1)[1]
        shape = i % 3
        if shape == 0:
            lead = rng.choice(FILLERS)
            text = f"{lead} the {entity.label} in detail. Its study covers {hint}."
            record = HeteroRecord(record_id=rid, kind="unstructured", text=text)
            start = text.index(entity.label)
        elif shape == 1:
            record = HeteroRecord(
                record_id=rid,
                kind="semiStructured",
                fields=(("name", entity.label), ("about", f"covers {hint}")),
                focus_field="name",
            )
            start = 0
        else:
            record = HeteroRecord(
                record_id=rid,
                kind="structured",
                external_iri=f"ext://datum/{rid}",
                label=entity.label,
                description=f"{entity.label} entry; covers {hint}",
            )
            start = 0
        records.append(record)
        gold.append(
            {
                "recordId": rid,
                "start": start,
                "end": start + len(entity.label),
                "entityIri": entity.iri,
            }
        )
    return records, gold


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=str(Path(__file__).resolve().parent.parent / "tests" / "data" / "linking"),
    )
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rng = random.Random(SEED)
    entities = make_entities(rng)
    kg = KnowledgeGraph(Ontology())
    for e in entities:
        kg.add_entity(e)
    write_graph(kg, out / "graph.nt", out / "graph.meta.json")

    records, gold = make_records(rng, entities)
    save_records(records, out / "records.jsonl")
    with open(out / "gold.jsonl", "w", encoding="utf-8") as f:
        for row in gold:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")

    print(f"wrote {len(entities)} entities, {len(records)} records, {len(gold)} gold links -> {out}")


if __name__ == "__main__":
    main()
