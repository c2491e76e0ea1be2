#!/usr/bin/env python3
"""End-to-end walkthrough on the bundled fixture data.

Segments the sample textbook, assigns key topics per section, runs a
two-stage annotation session (entities -> triples), consolidates rhetorical
roles, imports concepts from a small external graph, links and stores a
heterogeneous record, answers questions over the result, and exports the
graph. Everything is deterministic; artifacts land in --out (default
demo_out/)."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from kgforge.acquisition.candidates import GazetteerRecognizer, detect_candidates
from kgforge.acquisition.session import AnnotationSession
from kgforge.acquisition.triples import CallableOpenIeExtractor, InfoboxRow, gen_triple_candidates
from kgforge.config import Config
from kgforge.consolidation.expansion import ExternalAlignment, expand_concepts
from kgforge.consolidation.roles import link_roles, recognize_roles, add_role
from kgforge.ingest.markup import segment_textbook
from kgforge.ingest.topics import TopicCatalog, assign_key_topics, build_section_tfidf
from kgforge.linking.pipeline import LinkerConfig, concept_gazetteer, index_record
from kgforge.linking.records import HeteroRecord
from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, Triple
from kgforge.model.ntriples import write_graph
from kgforge.model.ontology import CLASS_CONCEPT, Ontology
from kgforge.qa.engine import answer_question
from kgforge.qa.templates import DEFAULT_TEMPLATES, TARGET_PROPERTY, QuestionTemplate
from kgforge.textindex.embedding import get_provider
from kgforge.textindex.search import build_index

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def banner(title: str) -> None:
    print(f"\n=== {title} " + "=" * max(3, 60 - len(title)))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo_out")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = Config()
    provider = get_provider(cfg.embedding)

    # 1. segment the textbook and assign key topics per section
    banner("1. ingest: segment textbook, assign topics")
    tree = segment_textbook((DATA / "textbook.html").read_text(encoding="utf-8"), book_id="hist")
    catalog = TopicCatalog.load(DATA / "topics.json")
    tfidf = build_section_tfidf(tree, cfg=cfg.tokenizer())
    assignments = assign_key_topics(tree, catalog, tfidf, threshold=cfg.theta_topic, mode=cfg.topic_mode)
    for section in tree.sections():
        ranked = assignments[section.id]
        tops = ", ".join(f"{iri.rsplit('/', 1)[-1]}={score:.3f}" for iri, score in ranked[:2])
        print(f"  {section.id}  {section.title[:42]:<44} {tops or '-'}")

    # 2. seed the graph with the catalog concepts
    banner("2. graph: seed concepts from the topic catalog")
    kg = KnowledgeGraph(Ontology.load(DATA / "ontology.json"))
    for entry in catalog.entries:
        kg.add_entity(
            Entity(iri=entry.concept_iri, label=entry.label, aliases=set(entry.aliases),
                   description=f"key topic: {entry.label}", class_iri=CLASS_CONCEPT, kind="concept")
        )
    kg.add_triple(Triple("edukg://concept/french-revolution", "edukg://prop/relatedTo",
                         "edukg://concept/national-assembly", Provenance("seed", "human", 1.0)))
    print(f"  entities: {len(kg.entities)}, revision: {kg.revision}")

    # 3. two-stage annotation session on one section
    banner("3. session: entity stage")
    section = tree.sections()[1]
    text = section.text()
    gazetteer = {
        term: kg.entities[iri].class_iri for term, iri in concept_gazetteer(kg).items()
    }
    candidates = detect_candidates(text, [GazetteerRecognizer(gazetteer)])
    session = AnnotationSession("demo-1", section.id, text, candidates,
                                alpha=cfg.alpha, feedback_mode=cfg.feedback_mode)
    for cand in session.ranked():
        session.apply_decision(cand.id, "accept", annotator="demo")
        print(f"  accept {cand.surface!r}  P: {cand.confidence:.2f} -> "
              f"{session.entity_candidates[cand.id].confidence:.2f}")
    session.commit(kg)
    mapped = sorted(set(session.committed_entities.values()))
    print(f"  committed; candidates map to {len(mapped)} entities, revision: {kg.revision}")

    banner("3b. session: triple stage")
    fr = "edukg://concept/french-revolution"
    accepted = [
        (iri, session.entity_candidates[cid].surface)
        for cid, iri in sorted(session.committed_entities.items())
    ]
    extractor = CallableOpenIeExtractor(
        lambda _text: [{"head": "French Revolution", "predicate": "spread across",
                        "tail": "Europe", "sentenceIdx": 3}]
    )
    triples = gen_triple_candidates(
        text, accepted,
        infoboxes={fr: [InfoboxRow("ib1", "starting time", "1789")]},
        extractor=extractor,
        properties=list(kg.ontology.properties.values()),
        provider=provider,
        tau_map=cfg.tau_map,
    )
    session.advance(triples)
    for cand in session.ranked():
        session.apply_decision(cand.id, "accept", annotator="demo")
        tail = cand.tail.lexical if isinstance(cand.tail, Literal) else cand.tail
        predicate = cand.predicate.rsplit("/", 1)[-1] if cand.predicate else f"raw {cand.predicate_raw!r}"
        print(f"  accept [{cand.origin}] {cand.head_iri.rsplit('/', 1)[-1]} --{predicate}--> {tail}")
    warnings: list[str] = []
    added = session.commit(kg, warnings_out=warnings)
    print(f"  committed; triples added: {added}, warnings: {warnings or 'none'}, revision: {kg.revision}")

    # 4. rhetorical roles from the definition sentence in the last section
    banner("4. roles: recognize and attach rhetorical roles")
    role_sources = [
        ("edukg://concept/newtons-first-law",
         "Newton's first law of motion is defined as the principle of inertia."),
        ("edukg://concept/national-assembly",
         "The National Assembly formed because the French Revolution upended the old estates."),
    ]
    for parent_iri, sentence in role_sources:
        for draft in recognize_roles(parent_iri, [sentence]):
            role = add_role(kg, draft, source_id="demo")
            linked = link_roles(role.iri, kg)
            print(f"  {draft.role_type.value}: {role.label!r} (mentions: {len(linked)})")

    # 5. expansion from a toy external graph
    banner("5. expansion: import concepts from an external graph")
    ext = KnowledgeGraph(Ontology.load(DATA / "ontology.json"))
    ext.add_entity(Entity(iri="ext://fr", label="Revolution francaise",
                          description="key topic: French Revolution",
                          class_iri=CLASS_CONCEPT, kind="concept"))
    for i, (label, desc) in enumerate([
        ("Storming of the Bastille", "key topic: French Revolution event"),
        ("Weather patterns", "unrelated meteorological notes"),
    ]):
        iri = f"ext://c{i}"
        ext.add_entity(Entity(iri=iri, label=label, description=desc,
                              class_iri=CLASS_CONCEPT, kind="concept"))
        ext.add_triple(Triple("ext://fr", "edukg://prop/relatedTo", iri,
                              Provenance("ext", "human", 1.0)))
    report = expand_concepts(
        kg, ext,
        [ExternalAlignment("edukg://concept/french-revolution", "ext://fr")],
        theta=0.2, provider=provider,
    )
    for row in report.added:
        print(f"  imported {row['iri']} from {row['external']} (score {row['score']:.3f})")
    print(f"  warnings: {report.warnings or 'none'}")

    # 6. link and store a heterogeneous record
    banner("6. linking: index an external record")
    concepts = [e for e in kg.entities.values() if e.kind == "concept"]
    index = build_index(concepts, cfg.tokenizer(), snapshot_id=f"rev{kg.revision}")
    record = HeteroRecord(
        record_id="news-001", kind="unstructured",
        text="Archives digitized new letters from the National Assembly about the French Revolution.",
    )
    results = index_record(kg, record, index, provider, LinkerConfig(k=cfg.search_k, tau_nil=0.0))
    for r in results:
        print(f"  {r.mention.surface!r} -> {r.resolved or 'NIL'} (score {r.score:.3f})")

    # 7. question answering
    banner("7. QA: template question answering")
    templates = DEFAULT_TEMPLATES + (
        QuestionTemplate(
            id="prop.startingTime",
            trigger_keywords=("starting time of", "when did"),
            target_kind=TARGET_PROPERTY,
            property_iri="edukg://prop/startingTime",
            priority=5,
        ),
    )
    for question in (
        "When did the French Revolution start",
        "What is the definition of Newton's first law of motion",
    ):
        result = answer_question(kg, question, templates)
        print(f"  Q: {question}")
        print(f"  A: {'; '.join(result.answers) or '(no answers)'}")

    # 8. export
    banner("8. export: canonical dump")
    write_graph(kg, out / "graph.nt", out / "graph.meta.json")
    (out / "topics.json").write_text(
        json.dumps({sid: [{"iri": i, "score": s} for i, s in ranked]
                    for sid, ranked in assignments.items()},
                   ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    print(f"  wrote {out}/graph.nt ({len(kg.triples)} triples, revision {kg.revision})")
    print(f"  wrote {out}/graph.meta.json and {out}/topics.json")


if __name__ == "__main__":
    main()
