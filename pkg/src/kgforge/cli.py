"""Command-line interface. Exit codes: 0 success, 1 domain error, 2 usage.
Results go to stdout, diagnostics to stderr."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from kgforge.acquisition.candidates import GazetteerRecognizer, detect_candidates
from kgforge.acquisition.session import SessionStore, commit_session
from kgforge.acquisition.triples import InfoboxRow, gen_triple_candidates
from kgforge.config import Config, load_config
from kgforge.consolidation.expansion import expand_concepts, load_alignments
from kgforge.errors import KgError
from kgforge.ingest.exercises import MarkerConfig, load_exercises
from kgforge.ingest.markup import segment_textbook
from kgforge.ingest.topics import TopicCatalog, assign_key_topics, build_section_tfidf
from kgforge.linking.evaluate import evaluate_linking, load_gold, render_table
from kgforge.linking.pipeline import (
    LinkerConfig,
    LinkResult,
    concept_gazetteer,
    index_record,
    link_record,
)
from kgforge.linking.records import load_records
from kgforge.model.graph import KnowledgeGraph
from kgforge.model.ntriples import read_graph, write_graph
from kgforge.model.ontology import Ontology
from kgforge.qa.engine import answer_question
from kgforge.qa.templates import load_templates
from kgforge.textindex.embedding import get_provider
from kgforge.textindex.search import build_index, fuzzy_search, load_index, save_index


def _load_graph(args) -> KnowledgeGraph:
    return read_graph(args.graph, args.meta)


def _store_graph(kg: KnowledgeGraph, args) -> None:
    write_graph(kg, args.graph, args.meta)


def _config(args) -> Config:
    return load_config(getattr(args, "config", None))


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True))


# -- subcommand handlers ----------------------------------------------------


def cmd_ingest(args) -> int:
    cfg = _config(args)
    markup = Path(args.book).read_text(encoding="utf-8")
    tree = segment_textbook(markup, book_id=args.book_id, mode=args.mode)
    Path(args.out).write_text(
        json.dumps(tree.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    print(f"sections: {len(tree.sections())}", file=sys.stderr)
    if args.exercises:
        markers = MarkerConfig.load(args.markers) if args.markers else MarkerConfig()
        parsed = load_exercises(args.exercises, markers)
        out = args.exercises_out or (args.exercises + ".parsed.json")
        Path(out).write_text(
            json.dumps([e.to_dict() for e in parsed], ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        print(f"exercises: {len(parsed)}", file=sys.stderr)
    if args.topics:
        catalog = TopicCatalog.load(args.topics)
        tfidf = build_section_tfidf(tree, cfg=cfg.tokenizer())
        assignments = assign_key_topics(
            tree, catalog, tfidf, threshold=cfg.theta_topic, mode=cfg.topic_mode
        )
        out = args.assignments_out or (args.out + ".topics.json")
        payload = {
            sid: [{"iri": iri, "score": score} for iri, score in ranked]
            for sid, ranked in assignments.items()
        }
        Path(out).write_text(
            json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"sections with topics: {sum(1 for v in payload.values() if v)}", file=sys.stderr)
    return 0


def cmd_build_index(args) -> int:
    cfg = _config(args)
    kg = _load_graph(args)
    index = build_index(
        kg.entities.values(), cfg.tokenizer(), snapshot_id=f"rev{kg.revision}"
    )
    save_index(index, args.out)
    print(f"indexed entities: {len(index.entity_iris)}", file=sys.stderr)
    return 0


def cmd_search(args) -> int:
    index = load_index(args.index)
    hits = fuzzy_search(index, args.query, k=args.k)
    _emit([{"iri": h.iri, "matchKind": h.match_kind, "score": h.score} for h in hits])
    return 0


def _session_store(args, cfg: Config) -> SessionStore:
    return SessionStore(args.sessions_dir or cfg.sessions_dir)


def cmd_session(args) -> int:
    cfg = _config(args)
    store = _session_store(args, cfg)
    if args.session_cmd == "new":
        kg = _load_graph(args)
        text = Path(args.text_file).read_text(encoding="utf-8")
        recognizer = GazetteerRecognizer(
            {term: kg.entities[iri].class_iri for term, iri in concept_gazetteer(kg).items()}
        )
        candidates = detect_candidates(text, [recognizer])
        session = store.create(
            doc_id=args.doc_id,
            text=text,
            candidates=candidates,
            alpha=cfg.alpha,
            feedback_mode=cfg.feedback_mode,
            session_id=args.session_id,
        )
        _emit(
            {
                "sessionId": session.session_id,
                "stage": session.stage,
                "candidates": [c.to_dict() for c in session.ranked()],
            }
        )
        return 0
    session = store.load(args.session_id)
    if args.session_cmd == "label":
        session.apply_decision(args.candidate, args.verdict, annotator=args.annotator)
        _emit({"stage": session.stage, "candidates": [c.to_dict() for c in session.ranked()]})
        return 0
    if args.session_cmd == "advance":
        kg = _load_graph(args)
        accepted = [
            (iri, session.entity_candidates[cid].surface)
            for cid, iri in session.committed_entities.items()
            if cid in session.entity_candidates
        ]
        infoboxes = None
        if args.infoboxes:
            raw = json.loads(Path(args.infoboxes).read_text(encoding="utf-8"))
            infoboxes = {
                head: [InfoboxRow(r["id"], r["predicate"], r["value"]) for r in rows]
                for head, rows in raw.items()
            }
        candidates = gen_triple_candidates(
            session.text,
            accepted,
            infoboxes=infoboxes,
            properties=list(kg.ontology.properties.values()),
            provider=get_provider(cfg.embedding),
            tau_map=cfg.tau_map,
        )
        session.advance(candidates)
        _emit({"stage": session.stage, "candidates": [c.to_dict() for c in session.ranked()]})
        return 0
    if args.session_cmd == "commit":
        kg = _load_graph(args)
        added = commit_session(session, kg)
        _store_graph(kg, args)
        _emit({"stage": session.stage, "addedTriples": added, "revision": kg.revision})
        return 0
    if args.session_cmd == "show":
        _emit(
            {
                "sessionId": session.session_id,
                "stage": session.stage,
                "entityCommitted": session.entity_committed,
                "tripleCommitted": session.triple_committed,
                "candidates": [c.to_dict() for c in session.ranked()],
            }
        )
        return 0
    raise AssertionError(f"unhandled session action {args.session_cmd}")


def cmd_expand(args) -> int:
    cfg = _config(args)
    kg = _load_graph(args)
    ext_kg = read_graph(args.external, args.external_meta)
    alignments = load_alignments(args.alignments)
    theta = args.theta if args.theta is not None else cfg.theta
    report = expand_concepts(
        kg, ext_kg, alignments, theta=theta, provider=get_provider(cfg.embedding)
    )
    _store_graph(kg, args)
    _emit(report.to_dict())
    return 0


def cmd_link(args) -> int:
    cfg = _config(args)
    kg = _load_graph(args)
    provider = get_provider(cfg.embedding)
    link_cfg = LinkerConfig(k=cfg.search_k, tau_nil=cfg.tau_nil)
    if args.index:
        index = load_index(args.index)
    else:
        index = build_index(kg.entities.values(), cfg.tokenizer())
    records = load_records(args.records)
    rows: list[dict] = []
    for record in records:
        if args.commit:
            results = index_record(kg, record, index, provider, link_cfg)
        else:
            results = link_record(
                record, index, kg.entities, concept_gazetteer(kg), provider, link_cfg
            )
        rows.extend(r.to_dict() for r in results)
    if args.commit:
        _store_graph(kg, args)
    out_text = "\n".join(json.dumps(r, ensure_ascii=False, sort_keys=True) for r in rows)
    if args.out:
        Path(args.out).write_text(out_text + ("\n" if rows else ""), encoding="utf-8")
        print(f"links: {len(rows)}", file=sys.stderr)
    else:
        if out_text:
            print(out_text)
    return 0


def cmd_evaluate(args) -> int:
    gold = load_gold(args.gold)
    predicted = [
        LinkResult.from_dict(json.loads(line))
        for line in Path(args.pred).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    report = evaluate_linking(gold, predicted)
    if args.table:
        print(render_table({args.subject: report}))
    else:
        print(f"precision {report.precision:.2f}")
        print(f"recall {report.recall:.2f}")
        print(f"F1 {report.f1:.2f}")
    return 0


def cmd_qa(args) -> int:
    kg = _load_graph(args)
    templates = load_templates(args.templates)
    result = answer_question(kg, args.question, templates)
    for line in result.answers:
        print(line)
    if not result.answers:
        print("(no answers)", file=sys.stderr)
    return 0


def cmd_export(args) -> int:
    kg = _load_graph(args)
    if args.out_nt and args.out_meta:
        write_graph(kg, args.out_nt, args.out_meta)
        print(f"triples: {len(kg)}", file=sys.stderr)
    else:
        from kgforge.model.ntriples import export_graph

        text, _meta = export_graph(kg)
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from kgforge.service import create_app

    cfg = _config(args)
    host = args.host or cfg.host
    port = args.port or cfg.port
    uvicorn.run(create_app(cfg), host=host, port=port, log_level="info")
    return 0


# -- parser -------------------------------------------------------------------


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="N-Triples graph file")
    p.add_argument("--meta", required=True, help="graph sidecar JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgforge",
        description="Knowledge-graph construction, maintenance, linking, and QA",
    )
    parser.add_argument("--config", help="TOML config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="segment a textbook and assign topics")
    p.add_argument("--book", required=True)
    p.add_argument("--book-id", default="book")
    p.add_argument("--mode", choices=("strict", "lax"), default="lax")
    p.add_argument("--out", required=True)
    p.add_argument("--exercises")
    p.add_argument("--exercises-out")
    p.add_argument("--markers")
    p.add_argument("--topics")
    p.add_argument("--assignments-out")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("build-index", help="build the search index from a graph")
    _add_graph_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_build_index)

    p = sub.add_parser("search", help="query a saved index")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("session", help="annotation session operations")
    sess = p.add_subparsers(dest="session_cmd", required=True)
    sp = sess.add_parser("new")
    _add_graph_args(sp)
    sp.add_argument("--doc-id", required=True)
    sp.add_argument("--text-file", required=True)
    sp.add_argument("--sessions-dir")
    sp.add_argument("--session-id")
    sp.set_defaults(fn=cmd_session)
    sp = sess.add_parser("label")
    sp.add_argument("--session-id", required=True)
    sp.add_argument("--candidate", required=True)
    sp.add_argument("--verdict", choices=("accept", "reject", "edit"), required=True)
    sp.add_argument("--annotator", default="cli")
    sp.add_argument("--sessions-dir")
    sp.set_defaults(fn=cmd_session)
    sp = sess.add_parser("advance")
    _add_graph_args(sp)
    sp.add_argument("--session-id", required=True)
    sp.add_argument("--sessions-dir")
    sp.add_argument("--infoboxes")
    sp.set_defaults(fn=cmd_session)
    sp = sess.add_parser("commit")
    _add_graph_args(sp)
    sp.add_argument("--session-id", required=True)
    sp.add_argument("--sessions-dir")
    sp.set_defaults(fn=cmd_session)
    sp = sess.add_parser("show")
    sp.add_argument("--session-id", required=True)
    sp.add_argument("--sessions-dir")
    sp.set_defaults(fn=cmd_session)

    p = sub.add_parser("expand", help="import concepts from an aligned external graph")
    _add_graph_args(p)
    p.add_argument("--external", required=True)
    p.add_argument("--external-meta", required=True)
    p.add_argument("--alignments", required=True)
    p.add_argument("--theta", type=float, default=None)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("link", help="link heterogeneous records against the graph")
    _add_graph_args(p)
    p.add_argument("--records", required=True)
    p.add_argument("--index")
    p.add_argument("--out")
    p.add_argument("--commit", action="store_true", help="store records and links in the graph")
    p.set_defaults(fn=cmd_link)

    p = sub.add_parser("evaluate", help="score predicted links against gold links")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--table", action="store_true")
    p.add_argument("--subject", default="all")
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("qa", help="answer a question over the graph")
    _add_graph_args(p)
    p.add_argument("--question", required=True)
    p.add_argument("--templates", required=True)
    p.set_defaults(fn=cmd_qa)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("export", help="canonical graph dump")
    _add_graph_args(p)
    p.add_argument("--out-nt")
    p.add_argument("--out-meta")
    p.set_defaults(fn=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except KgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
