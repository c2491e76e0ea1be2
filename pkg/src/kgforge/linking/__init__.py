from kgforge.linking.evaluate import (
    EvalReport,
    GoldLink,
    evaluate_counts,
    evaluate_linking,
    harmonic_f1,
    load_gold,
    render_table,
)
from kgforge.linking.pipeline import (
    LinkerConfig,
    LinkResult,
    Mention,
    build_context,
    concept_gazetteer,
    detect_mentions,
    disambiguate,
    gen_candidates,
    index_record,
    link_record,
)
from kgforge.linking.records import (
    SEMI_STRUCTURED,
    STRUCTURED,
    UNSTRUCTURED,
    HeteroRecord,
    load_records,
    save_records,
)

__all__ = [
    "EvalReport",
    "GoldLink",
    "evaluate_counts",
    "evaluate_linking",
    "harmonic_f1",
    "load_gold",
    "render_table",
    "LinkerConfig",
    "LinkResult",
    "Mention",
    "build_context",
    "concept_gazetteer",
    "detect_mentions",
    "disambiguate",
    "gen_candidates",
    "index_record",
    "link_record",
    "SEMI_STRUCTURED",
    "STRUCTURED",
    "UNSTRUCTURED",
    "HeteroRecord",
    "load_records",
    "save_records",
]
