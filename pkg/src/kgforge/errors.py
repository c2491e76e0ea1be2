"""Exception hierarchy shared by all kgforge subsystems."""

from __future__ import annotations


class KgError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


# --- graph store ---------------------------------------------------------


class UnknownSubject(KgError):
    pass


class UnknownPredicate(KgError):
    pass


class UnknownObject(KgError):
    pass


class ObjectKindMismatch(KgError):
    pass


class OntologyError(KgError):
    """Schema file violates an ontology invariant (duplicate iri, parent cycle, ...)."""


class ParseError(KgError):
    """Malformed serialized graph input; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# --- ingest ---------------------------------------------------------------


class MalformedMarkup(KgError):
    pass


class OrphanSection(KgError):
    pass


class MissingQuestion(KgError):
    pass


class OrdinalOutOfRange(KgError):
    pass


# --- text index -----------------------------------------------------------


class DimensionMismatch(KgError):
    pass


class EmptyQuery(KgError):
    pass


class IndexFormatError(KgError):
    """Persisted index file has a bad magic header or unsupported version."""


class ProviderUnavailable(KgError):
    """Remote embedding provider could not be reached."""


# --- acquisition ----------------------------------------------------------


class NoRecognizer(KgError):
    pass


class StageIncomplete(KgError):
    """Session stage transition or commit attempted out of order."""


class UnknownCandidate(KgError):
    pass


# --- consolidation --------------------------------------------------------


class IsolatedEntity(KgError):
    """Expansion scoring needs at least one local neighbor."""


# --- qa ---------------------------------------------------------------------


class NoTemplate(KgError):
    pass


class EntityUnresolved(KgError):
    pass


class QuerySyntaxError(KgError):
    pass


# --- gateway ----------------------------------------------------------------


class ConfigError(KgError):
    pass
