"""HTTP/JSON gateway over the engine.

Thin adapter: every endpoint's behavior equals the corresponding library call
on the same graph snapshot. Mutations serialize on the graph writer lock;
every response carries the current graph revision, which strictly increases
across successful mutations. Errors: 400 malformed body, 404 unknown session,
409 stage violation.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from kgforge.acquisition.candidates import (
    EntityCandidate,
    GazetteerRecognizer,
    detect_candidates,
)
from kgforge.acquisition.session import SessionStore
from kgforge.acquisition.triples import InfoboxRow, gen_triple_candidates
from kgforge.config import Config
from kgforge.errors import (
    EmptyQuery,
    EntityUnresolved,
    KgError,
    NoTemplate,
    StageIncomplete,
    UnknownCandidate,
)
from kgforge.linking.pipeline import LinkerConfig, concept_gazetteer, index_record, link_record
from kgforge.linking.records import HeteroRecord
from kgforge.model.graph import KnowledgeGraph
from kgforge.model.ntriples import export_graph, read_graph, write_graph
from kgforge.model.ontology import Ontology
from kgforge.qa.engine import answer_question
from kgforge.qa.templates import DEFAULT_TEMPLATES, QuestionTemplate
from kgforge.textindex.embedding import get_provider
from kgforge.textindex.search import build_index, fuzzy_search


class _CallableExtractor:
    def __init__(self, rows: list[dict]):
        self.rows = rows

    def extract(self, text: str) -> list[dict]:
        return self.rows


def create_app(
    cfg: Config | None = None,
    kg: KnowledgeGraph | None = None,
    templates: tuple[QuestionTemplate, ...] = DEFAULT_TEMPLATES,
) -> FastAPI:
    cfg = cfg or Config()
    if kg is None:
        nt, meta = Path(cfg.graph_nt), Path(cfg.graph_meta)
        if nt.exists() and meta.exists():
            kg = read_graph(nt, meta)
        else:
            kg = KnowledgeGraph(Ontology())
    store = SessionStore(cfg.sessions_dir)
    provider = get_provider(cfg.embedding)
    link_cfg = LinkerConfig(k=cfg.search_k, tau_nil=cfg.tau_nil)

    app = FastAPI(title="kgforge", version="0.1.0")
    # The browser client may be served from a different origin than the API.
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    state = {"index": None, "index_revision": -1}

    def index():
        if state["index"] is None or state["index_revision"] != kg.revision:
            state["index"] = build_index(
                kg.entities.values(), cfg.tokenizer(), snapshot_id=f"rev{kg.revision}"
            )
            state["index_revision"] = kg.revision
        return state["index"]

    def ok(payload: dict, status: int = 200) -> JSONResponse:
        return JSONResponse({**payload, "revision": kg.revision}, status_code=status)

    def fail(status: int, message: str) -> JSONResponse:
        return JSONResponse(
            {"error": message, "revision": kg.revision}, status_code=status
        )

    def persist() -> None:
        if cfg.graph_nt and cfg.graph_meta:
            write_graph(kg, cfg.graph_nt, cfg.graph_meta)

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return fail(400, f"malformed request: {exc.errors()[:3]}")

    @app.exception_handler(StageIncomplete)
    async def _stage_handler(request: Request, exc: StageIncomplete):
        return fail(409, str(exc))

    @app.exception_handler(KgError)
    async def _domain_handler(request: Request, exc: KgError):
        return fail(400, str(exc))

    def load_session(session_id: str):
        if not store.exists(session_id):
            return None
        return store.load(session_id)

    def session_view(session) -> dict:
        return {
            "sessionId": session.session_id,
            "docId": session.doc_id,
            "stage": session.stage,
            "text": session.text,
            "alpha": session.alpha,
            "feedbackMode": session.feedback_mode,
            "entityCommitted": session.entity_committed,
            "tripleCommitted": session.triple_committed,
            "candidates": [c.to_dict() for c in session.ranked()],
        }

    # -- read endpoints -----------------------------------------------------

    @app.get("/search")
    def search(q: str = "", k: int | None = None):
        try:
            hits = fuzzy_search(index(), q, k=k if k is not None else cfg.search_k)
        except EmptyQuery as exc:
            return fail(400, str(exc))
        return ok(
            {
                "hits": [
                    {"iri": h.iri, "matchKind": h.match_kind, "score": h.score}
                    for h in hits
                ]
            }
        )

    @app.get("/export")
    def export():
        with kg.lock:
            text, meta = export_graph(kg)
        return ok({"ntriples": text, "meta": meta})

    # -- linking ------------------------------------------------------------

    @app.post("/link")
    def link(body: dict):
        try:
            record = HeteroRecord.from_dict(body.get("record", body))
        except (KeyError, TypeError, ValueError) as exc:
            return fail(400, f"malformed record: {exc}")
        store_links = bool(body.get("store", False))
        if store_links:
            results = index_record(kg, record, index(), provider, link_cfg)
            persist()
        else:
            results = link_record(
                record, index(), kg.entities, concept_gazetteer(kg), provider, link_cfg
            )
        return ok({"results": [r.to_dict() for r in results]})

    # -- QA -------------------------------------------------------------------

    @app.post("/qa")
    def qa(body: dict):
        question = body.get("question")
        if not isinstance(question, str) or not question.strip():
            return fail(400, "body must carry a non-empty question string")
        try:
            result = answer_question(kg, question, templates)
        except NoTemplate:
            return ok({"matched": False, "reason": "noTemplate", "answers": []})
        except EntityUnresolved:
            return ok({"matched": False, "reason": "entityUnresolved", "answers": []})
        return ok(result.to_dict())

    # -- sessions -------------------------------------------------------------

    @app.post("/sessions")
    def create_session(body: dict):
        doc_id = body.get("docId")
        text = body.get("text")
        if not isinstance(doc_id, str) or not isinstance(text, str) or not text:
            return fail(400, "body must carry docId and non-empty text")
        if "candidates" in body:
            try:
                candidates = [EntityCandidate.from_dict(d) for d in body["candidates"]]
            except (KeyError, TypeError, ValueError) as exc:
                return fail(400, f"malformed candidates: {exc}")
        else:
            gaz = {
                term: kg.entities[iri].class_iri
                for term, iri in concept_gazetteer(kg).items()
            }
            candidates = (
                detect_candidates(text, [GazetteerRecognizer(gaz)]) if gaz else []
            )
        try:
            session = store.create(
                doc_id=doc_id,
                text=text,
                candidates=candidates,
                alpha=cfg.alpha,
                feedback_mode=cfg.feedback_mode,
                session_id=body.get("sessionId"),
            )
        except ValueError as exc:
            return fail(400, str(exc))
        return ok(session_view(session), status=201)

    @app.get("/sessions/{session_id}/candidates")
    def session_candidates(session_id: str):
        session = load_session(session_id)
        if session is None:
            return fail(404, f"unknown session {session_id}")
        return ok(session_view(session))

    @app.post("/sessions/{session_id}/candidates")
    def session_add_candidate(session_id: str, body: dict):
        session = load_session(session_id)
        if session is None:
            return fail(404, f"unknown session {session_id}")
        try:
            candidate = EntityCandidate.from_dict(body)
        except (KeyError, TypeError, ValueError) as exc:
            return fail(400, f"malformed candidate: {exc}")
        try:
            session.add_candidate(candidate)
        except ValueError as exc:
            return fail(400, str(exc))
        return ok(session_view(session), status=201)

    @app.post("/sessions/{session_id}/label")
    def session_label(session_id: str, body: dict):
        session = load_session(session_id)
        if session is None:
            return fail(404, f"unknown session {session_id}")
        candidate_id = body.get("candidateId")
        verdict = body.get("verdict")
        if not isinstance(candidate_id, str) or verdict not in ("accept", "reject", "edit"):
            return fail(400, "body must carry candidateId and a valid verdict")
        try:
            session.apply_decision(
                candidate_id,
                verdict,
                annotator=body.get("annotator", "ui"),
                payload=body.get("payload"),
            )
        except UnknownCandidate as exc:
            return fail(400, str(exc))
        return ok(session_view(session))

    @app.post("/sessions/{session_id}/advance")
    def session_advance(session_id: str, body: dict | None = None):
        session = load_session(session_id)
        if session is None:
            return fail(404, f"unknown session {session_id}")
        body = body or {}
        infoboxes = None
        if "infoboxes" in body:
            try:
                infoboxes = {
                    head: [InfoboxRow(r["id"], r["predicate"], r["value"]) for r in rows]
                    for head, rows in body["infoboxes"].items()
                }
            except (KeyError, TypeError) as exc:
                return fail(400, f"malformed infoboxes: {exc}")
        extractor = None
        if "openie" in body:
            if not isinstance(body["openie"], list):
                return fail(400, "openie must be a list of raw triples")
            extractor = _CallableExtractor(body["openie"])
        accepted = [
            (iri, session.entity_candidates[cid].surface)
            for cid, iri in sorted(session.committed_entities.items())
            if cid in session.entity_candidates
        ]
        candidates = gen_triple_candidates(
            session.text,
            accepted,
            infoboxes=infoboxes,
            extractor=extractor,
            properties=list(kg.ontology.properties.values()),
            provider=provider,
            tau_map=cfg.tau_map,
        )
        session.advance(candidates)  # StageIncomplete -> 409 via handler
        return ok(session_view(session))

    @app.post("/sessions/{session_id}/commit")
    def session_commit(session_id: str):
        session = load_session(session_id)
        if session is None:
            return fail(404, f"unknown session {session_id}")
        commit_warnings: list[str] = []
        with kg.lock:
            added = session.commit(kg, warnings_out=commit_warnings)
            persist()
        return ok(
            {**session_view(session), "addedTriples": added, "warnings": commit_warnings}
        )

    return app


__all__ = ["create_app"]
