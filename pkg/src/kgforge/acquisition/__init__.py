from kgforge.acquisition.candidates import (
    FEEDBACK_MODES,
    VERDICTS,
    EntityCandidate,
    ExternalLinkerRecognizer,
    GazetteerRecognizer,
    RawSpan,
    Recognizer,
    compute_confidence,
    detect_candidates,
    rank_candidates,
    update_confidence,
)
from kgforge.acquisition.session import (
    ENTITY_STAGE,
    TRIPLE_STAGE,
    AnnotationSession,
    SessionStore,
    commit_session,
)
from kgforge.acquisition.triples import (
    DEFAULT_ORIGIN_SCORES,
    ORIGINS,
    CallableOpenIeExtractor,
    InfoboxRow,
    JsonOpenIeExtractor,
    OpenIeExtractor,
    TripleCandidate,
    canonicalize_predicate,
    gen_triple_candidates,
    update_triple_confidence,
)

__all__ = [
    "FEEDBACK_MODES",
    "VERDICTS",
    "EntityCandidate",
    "ExternalLinkerRecognizer",
    "GazetteerRecognizer",
    "RawSpan",
    "Recognizer",
    "compute_confidence",
    "detect_candidates",
    "rank_candidates",
    "update_confidence",
    "ENTITY_STAGE",
    "TRIPLE_STAGE",
    "AnnotationSession",
    "SessionStore",
    "commit_session",
    "DEFAULT_ORIGIN_SCORES",
    "ORIGINS",
    "CallableOpenIeExtractor",
    "InfoboxRow",
    "JsonOpenIeExtractor",
    "OpenIeExtractor",
    "TripleCandidate",
    "canonicalize_predicate",
    "gen_triple_candidates",
    "update_triple_confidence",
]
