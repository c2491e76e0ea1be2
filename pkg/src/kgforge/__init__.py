"""Curricular knowledge-graph engine: ingest, acquisition, consolidation,
linking, and template QA over a deduplicated triple store."""

__version__ = "0.1.0"
