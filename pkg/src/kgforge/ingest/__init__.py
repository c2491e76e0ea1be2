from kgforge.ingest.exercises import (
    EXERCISE_KINDS,
    AmbiguousKind,
    Exercise,
    MarkerConfig,
    classify_kind,
    load_exercises,
    parse_exercise,
)
from kgforge.ingest.markup import (
    DEFAULT_RULES,
    DocTree,
    Lesson,
    Section,
    Unit,
    segment_textbook,
)
from kgforge.ingest.topics import (
    SCORE_MODES,
    SectionTopicScore,
    TopicCatalog,
    TopicEntry,
    assign_key_topics,
    build_section_tfidf,
    mentions,
    section_topic_score,
)

__all__ = [
    "EXERCISE_KINDS",
    "AmbiguousKind",
    "Exercise",
    "MarkerConfig",
    "classify_kind",
    "load_exercises",
    "parse_exercise",
    "DEFAULT_RULES",
    "DocTree",
    "Lesson",
    "Section",
    "Unit",
    "segment_textbook",
    "SCORE_MODES",
    "SectionTopicScore",
    "TopicCatalog",
    "TopicEntry",
    "assign_key_topics",
    "build_section_tfidf",
    "mentions",
    "section_topic_score",
]
