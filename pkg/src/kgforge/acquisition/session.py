"""Two-stage annotation sessions with a durable, replayable event log.

Stage order is fixed: entity decisions, entity commit, advance, triple
decisions, triple commit. Every state change appends one JSONL event; a
session replayed from its log reproduces every confidence value bit-exactly
(events carry the full candidate payloads, and confidence arithmetic is
replayed in log order).
"""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import replace
from pathlib import Path

from kgforge.acquisition.candidates import (
    EntityCandidate,
    rank_candidates,
    update_confidence,
)
from kgforge.acquisition.triples import TripleCandidate, update_triple_confidence
from kgforge.errors import StageIncomplete, UnknownCandidate
from kgforge.model.graph import Entity, KnowledgeGraph, Literal, Provenance, Triple
from kgforge.model.ontology import (
    CLASS_CONCEPT,
    PROP_EXTERNAL_EQUIVALENT,
    PROP_RAW_ASSERTION,
)
from kgforge.textindex.tokenize import normalize

ENTITY_STAGE = "entity"
TRIPLE_STAGE = "triple"

_CLASS_TO_KIND = {
    "edukg://class/Concept": "concept",
    "edukg://class/RhetoricalRole": "rhetoricalRole",
    "edukg://class/Resource": "resource",
    "edukg://class/ExternalDatum": "externalDatum",
}


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


class AnnotationSession:
    def __init__(
        self,
        session_id: str,
        doc_id: str,
        text: str,
        candidates: list[EntityCandidate],
        alpha: float = 0.1,
        feedback_mode: str = "signed",
    ):
        self.session_id = session_id
        self.doc_id = doc_id
        self.text = text
        self.alpha = alpha
        self.feedback_mode = feedback_mode
        self.stage = ENTITY_STAGE
        self.entity_candidates: dict[str, EntityCandidate] = {c.id: c for c in candidates}
        self.triple_candidates: dict[str, TripleCandidate] = {}
        self.entity_committed = False
        self.triple_committed = False
        self.committed_entities: dict[str, str] = {}
        self.committed_triple_count = 0
        self._committed_triple_ids: set[str] = set()
        self.events: list[dict] = [
            {
                "type": "created",
                "sessionId": session_id,
                "docId": doc_id,
                "text": text,
                "alpha": alpha,
                "feedbackMode": feedback_mode,
                "candidates": [c.to_dict() for c in candidates],
            }
        ]
        self._sink = None

    # -- event plumbing --------------------------------------------------

    def attach_sink(self, sink) -> None:
        """sink: callable(dict) invoked once per appended event."""
        self._sink = sink

    def _emit(self, event: dict) -> None:
        self.events.append(event)
        if self._sink is not None:
            self._sink(event)

    # -- stage state -----------------------------------------------------

    def ranked(self) -> list:
        if self.stage == ENTITY_STAGE:
            return rank_candidates(list(self.entity_candidates.values()))
        ranked = sorted(
            self.triple_candidates.values(), key=lambda c: (-c.confidence, c.id)
        )
        return ranked

    def final_verdicts(self, stage: str) -> dict[str, str]:
        """candidate id -> last accept/reject verdict in that stage."""
        out: dict[str, str] = {}
        for ev in self.events:
            if ev["type"] == "decision" and ev["stage"] == stage and ev["verdict"] in ("accept", "reject"):
                out[ev["candidateId"]] = ev["verdict"]
        return out

    def apply_decision(
        self,
        candidate_id: str,
        verdict: str,
        annotator: str = "anon",
        timestamp: float | None = None,
        payload: dict | None = None,
        _replaying: bool = False,
    ) -> None:
        ts = timestamp if timestamp is not None else time.time()
        if self.stage == ENTITY_STAGE:
            cur = self.entity_candidates.get(candidate_id)
            if cur is None:
                raise UnknownCandidate(f"no entity candidate {candidate_id}")
            if verdict == "edit":
                self.entity_candidates[candidate_id] = self._edit_entity(cur, payload or {})
            else:
                self.entity_candidates[candidate_id] = update_confidence(
                    cur, verdict, self.alpha, self.feedback_mode
                )
        else:
            cur = self.triple_candidates.get(candidate_id)
            if cur is None:
                raise UnknownCandidate(f"no triple candidate {candidate_id}")
            if verdict == "edit":
                self.triple_candidates[candidate_id] = self._edit_triple(cur, payload or {})
            else:
                self.triple_candidates[candidate_id] = update_triple_confidence(
                    cur, verdict, self.alpha, self.feedback_mode
                )
        event = {
            "type": "decision",
            "stage": self.stage,
            "candidateId": candidate_id,
            "verdict": verdict,
            "annotator": annotator,
            "timestamp": ts,
        }
        if payload:
            event["payload"] = payload
        if not _replaying:
            self._emit(event)

    @staticmethod
    def _edit_entity(c: EntityCandidate, payload: dict) -> EntityCandidate:
        fields = {}
        if "surface" in payload:
            fields["surface"] = payload["surface"]
        if "suggestedClass" in payload:
            fields["suggested_class"] = payload["suggestedClass"]
        if "linkedExternal" in payload:
            fields["linked_external"] = payload["linkedExternal"]
        return replace(c, **fields) if fields else c

    @staticmethod
    def _edit_triple(c: TripleCandidate, payload: dict) -> TripleCandidate:
        fields = {}
        if "predicate" in payload:
            fields["predicate"] = payload["predicate"]
        return replace(c, **fields) if fields else c

    def add_candidate(self, candidate: EntityCandidate, _replaying: bool = False) -> None:
        """Manually contributed entity candidate (entity stage only)."""
        if self.stage != ENTITY_STAGE:
            raise StageIncomplete("manual candidates belong to the entity stage")
        if candidate.id in self.entity_candidates:
            raise ValueError(f"candidate {candidate.id} already present")
        self.entity_candidates[candidate.id] = candidate
        if not _replaying:
            self._emit({"type": "added", "candidate": candidate.to_dict()})

    def advance(self, triple_candidates: list[TripleCandidate], _replaying: bool = False) -> None:
        """Move to the triple stage; requires the entity stage committed."""
        if self.stage != ENTITY_STAGE:
            raise StageIncomplete("session already in the triple stage")
        if not self.entity_committed:
            raise StageIncomplete("entity stage must be committed before advancing")
        self.stage = TRIPLE_STAGE
        self.triple_candidates = {c.id: c for c in triple_candidates}
        if not _replaying:
            self._emit(
                {"type": "advance", "candidates": [c.to_dict() for c in triple_candidates]}
            )

    def accepted_entities(self) -> list[EntityCandidate]:
        verdicts = self.final_verdicts(ENTITY_STAGE)
        return [
            self.entity_candidates[cid]
            for cid, v in sorted(verdicts.items())
            if v == "accept" and cid in self.entity_candidates
        ]

    # -- commit ------------------------------------------------------------

    def commit(self, kg: KnowledgeGraph, warnings_out: list[str] | None = None) -> int:
        """Commit the current stage's accepted candidates; idempotent."""
        if self.stage == ENTITY_STAGE:
            return self._commit_entities(kg)
        return self._commit_triples(kg, warnings_out)

    def _find_by_label(self, kg: KnowledgeGraph, surface: str) -> str | None:
        want = normalize(surface)
        for iri in sorted(kg.entities):
            if normalize(kg.entities[iri].label) == want:
                return iri
        return None

    def _commit_entities(self, kg: KnowledgeGraph) -> int:
        added_triples = 0
        mapping: dict[str, str] = {}
        with kg.lock:
            for cand in self.accepted_entities():
                if cand.id in self.committed_entities:
                    continue
                existing = self._find_by_label(kg, cand.surface)
                if existing is not None:
                    iri = existing
                else:
                    kind = _CLASS_TO_KIND.get(cand.suggested_class, "concept")
                    entity = Entity(
                        iri=kg.mint_iri(kind, cand.surface),
                        label=cand.surface,
                        kind=kind,
                        class_iri=cand.suggested_class or CLASS_CONCEPT,
                    )
                    kg.add_entity(entity)
                    iri = entity.iri
                if cand.linked_external:
                    accepted = kg.add_triple(
                        Triple(
                            subject=iri,
                            predicate=PROP_EXTERNAL_EQUIVALENT,
                            obj=Literal(cand.linked_external),
                            provenance=Provenance(
                                source_id=self.session_id,
                                method="human",
                                confidence=_clamp(cand.confidence),
                            ),
                        )
                    )
                    if accepted:
                        added_triples += 1
                mapping[cand.id] = iri
        self.committed_entities.update(mapping)
        self.entity_committed = True
        self._emit(
            {
                "type": "commit",
                "stage": ENTITY_STAGE,
                "entities": dict(sorted(self.committed_entities.items())),
                "addedTriples": added_triples,
            }
        )
        return added_triples

    def _commit_triples(self, kg: KnowledgeGraph, warnings_out: list[str] | None = None) -> int:
        verdicts = self.final_verdicts(TRIPLE_STAGE)
        added = 0
        with kg.lock:
            for cid in sorted(verdicts):
                if verdicts[cid] != "accept" or cid in self._committed_triple_ids:
                    continue
                cand = self.triple_candidates.get(cid)
                if cand is None:
                    continue
                prov = Provenance(
                    source_id=self.session_id,
                    method="human",
                    confidence=_clamp(cand.confidence),
                )
                if cand.predicate is not None:
                    t = Triple(cand.head_iri, cand.predicate, cand.tail, prov)
                elif cand.origin == "openie":
                    tail_text = (
                        cand.tail.lexical if isinstance(cand.tail, Literal) else cand.tail
                    )
                    t = Triple(
                        cand.head_iri,
                        PROP_RAW_ASSERTION,
                        Literal(f"{cand.predicate_raw} :: {tail_text}"),
                        prov,
                    )
                else:
                    msg = f"candidate {cid} accepted without a resolved predicate; skipped"
                    if warnings_out is not None:
                        warnings_out.append(msg)
                    continue
                try:
                    if kg.add_triple(t):
                        added += 1
                except Exception as exc:  # noqa: BLE001 - surfaced as a warning record
                    if warnings_out is not None:
                        warnings_out.append(f"candidate {cid} rejected by the store: {exc}")
                    continue
                self._committed_triple_ids.add(cid)
        self.triple_committed = True
        self.committed_triple_count += added
        self._emit(
            {
                "type": "commit",
                "stage": TRIPLE_STAGE,
                "added": added,
                "committedIds": sorted(self._committed_triple_ids),
            }
        )
        return added

    # -- replay --------------------------------------------------------------

    @classmethod
    def replay(cls, events: list[dict]) -> "AnnotationSession":
        """Rebuild a session from its event log; no graph access needed."""
        if not events or events[0]["type"] != "created":
            raise ValueError("event log must start with a created event")
        head = events[0]
        session = cls(
            session_id=head["sessionId"],
            doc_id=head["docId"],
            text=head.get("text", ""),
            candidates=[EntityCandidate.from_dict(d) for d in head["candidates"]],
            alpha=head["alpha"],
            feedback_mode=head.get("feedbackMode", "signed"),
        )
        session.events = [head]
        for ev in events[1:]:
            session.events.append(ev)
            if ev["type"] == "decision":
                session.apply_decision(
                    ev["candidateId"],
                    ev["verdict"],
                    annotator=ev.get("annotator", "anon"),
                    timestamp=ev.get("timestamp"),
                    payload=ev.get("payload"),
                    _replaying=True,
                )
            elif ev["type"] == "added":
                session.add_candidate(
                    EntityCandidate.from_dict(ev["candidate"]), _replaying=True
                )
            elif ev["type"] == "advance":
                session.stage = TRIPLE_STAGE
                session.triple_candidates = {
                    d["id"]: TripleCandidate.from_dict(d) for d in ev["candidates"]
                }
            elif ev["type"] == "commit":
                if ev["stage"] == ENTITY_STAGE:
                    session.entity_committed = True
                    session.committed_entities = dict(ev.get("entities", {}))
                else:
                    session.triple_committed = True
                    session.committed_triple_count += ev.get("added", 0)
                    session._committed_triple_ids.update(ev.get("committedIds", ()))
        return session


class SessionStore:
    """One append-only JSONL file per session, flushed per event."""

    def __init__(self, directory: "str | Path"):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.jsonl"

    def create(
        self,
        doc_id: str,
        text: str,
        candidates: list[EntityCandidate],
        alpha: float = 0.1,
        feedback_mode: str = "signed",
        session_id: str | None = None,
    ) -> AnnotationSession:
        sid = session_id or uuid.uuid4().hex
        if self._path(sid).exists():
            raise ValueError(f"session {sid} already exists")
        session = AnnotationSession(sid, doc_id, text, candidates, alpha, feedback_mode)
        self._write(sid, session.events[0])
        session.attach_sink(lambda ev, sid=sid: self._write(sid, ev))
        return session

    def _write(self, session_id: str, event: dict) -> None:
        with open(self._path(session_id), "a", encoding="utf-8") as f:
            f.write(json.dumps(event, ensure_ascii=False, sort_keys=True) + "\n")
            f.flush()

    def exists(self, session_id: str) -> bool:
        return self._path(session_id).exists()

    def load(self, session_id: str) -> AnnotationSession:
        path = self._path(session_id)
        events = [
            json.loads(line)
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        session = AnnotationSession.replay(events)
        session.attach_sink(lambda ev, sid=session_id: self._write(sid, ev))
        return session

    def list_sessions(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.jsonl"))


def commit_session(session: AnnotationSession, kg: KnowledgeGraph) -> int:
    """Commit the session's current stage; returns triples added to the graph."""
    return session.commit(kg)
