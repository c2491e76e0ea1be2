"""Core graph store: entities, triples, provenance, and indexed lookup."""

from __future__ import annotations

import logging
import re
import threading
import unicodedata
from dataclasses import dataclass, field
from enum import Enum

from kgforge.errors import (
    ObjectKindMismatch,
    OntologyError,
    UnknownObject,
    UnknownPredicate,
    UnknownSubject,
)
from kgforge.model.ontology import (
    CLASS_CONCEPT,
    CLASS_EXTERNAL_DATUM,
    CLASS_RESOURCE,
    CLASS_ROLE,
    DATATYPE,
    LITERAL_DATATYPES,
    OBJECT,
    Ontology,
)

log = logging.getLogger(__name__)

PROVENANCE_METHODS = frozenset(
    {"ner", "el", "openie", "infobox", "cooccurrence", "human", "expansion"}
)

ENTITY_KINDS = ("concept", "rhetoricalRole", "resource", "externalDatum")

_KIND_CLASS = {
    "concept": CLASS_CONCEPT,
    "rhetoricalRole": CLASS_ROLE,
    "resource": CLASS_RESOURCE,
    "externalDatum": CLASS_EXTERNAL_DATUM,
}


class RoleType(Enum):
    """Closed taxonomy of rhetorical roles; one template registry entry each."""

    Definition = "Definition"
    Process = "Process"
    Mechanism = "Mechanism"
    Reason = "Reason"
    Effect = "Effect"
    Significance = "Significance"
    Condition = "Condition"


@dataclass(frozen=True)
class Literal:
    """Typed literal value. Unrecognized datatype tags are stored as text."""

    lexical: str
    datatype: str = "text"

    def __post_init__(self):
        if self.datatype not in LITERAL_DATATYPES:
            object.__setattr__(self, "datatype", "text")


@dataclass(frozen=True)
class Provenance:
    source_id: str
    method: str
    confidence: float

    def __post_init__(self):
        if self.method not in PROVENANCE_METHODS:
            raise ValueError(f"unknown provenance method {self.method!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")

    def to_dict(self) -> dict:
        return {
            "sourceId": self.source_id,
            "method": self.method,
            "confidence": self.confidence,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Provenance":
        return cls(
            source_id=d["sourceId"],
            method=d["method"],
            confidence=float(d["confidence"]),
        )


# Keys used for dedup and for the object index: entity objects sort before
# literals so mixed buckets stay orderable.
TripleKey = tuple


def object_key(obj: "str | Literal") -> TripleKey:
    if isinstance(obj, Literal):
        return ("lit", obj.datatype, obj.lexical)
    return ("ent", obj)


@dataclass
class Triple:
    """One (subject, predicate, object) assertion with its provenance.

    Later writers of the same assertion land in `audit`; the first writer's
    provenance wins.
    """

    subject: str
    predicate: str
    obj: "str | Literal"
    provenance: Provenance
    audit: list[Provenance] = field(default_factory=list)

    def key(self) -> tuple:
        return (self.subject, self.predicate, object_key(self.obj))


@dataclass
class Entity:
    iri: str
    label: str
    aliases: set[str] = field(default_factory=set)
    description: str = ""
    class_iri: str = CLASS_CONCEPT
    kind: str = "concept"
    role_type: RoleType | None = None
    resource_kind: str | None = None
    data_format: str | None = None

    def __post_init__(self):
        if self.kind not in ENTITY_KINDS:
            raise ValueError(f"unknown entity kind {self.kind!r}")
        if self.kind == "rhetoricalRole" and self.role_type is None:
            raise ValueError(f"rhetoricalRole entity {self.iri} lacks a role type")

    def search_text(self) -> str:
        return " ".join([self.label, *sorted(self.aliases), self.description]).strip()


_SLUG_STRIP = re.compile(r"[^0-9a-z一-鿿]+")


def slugify(text: str) -> str:
    text = unicodedata.normalize("NFC", text).lower()
    slug = _SLUG_STRIP.sub("-", text).strip("-")
    return slug or "x"


class KnowledgeGraph:
    """Deduplicated triple store with subject/predicate/object indexes.

    Concurrency: many readers or one writer; mutators take `lock`, readers
    use `snapshot()` for an immutable copy.
    """

    def __init__(self, ontology: Ontology | None = None):
        self.ontology = ontology if ontology is not None else Ontology()
        self.entities: dict[str, Entity] = {}
        self.triples: dict[tuple, Triple] = {}
        self.by_subject: dict[str, set[tuple]] = {}
        self.by_predicate: dict[str, set[tuple]] = {}
        self.by_object: dict[TripleKey, set[tuple]] = {}
        self.revision = 0
        self.lock = threading.RLock()

    # -- entities ---------------------------------------------------------

    def add_entity(self, entity: Entity, mode: str = "strict") -> bool:
        with self.lock:
            if entity.iri in self.entities:
                return False
            if not self.ontology.has_class(entity.class_iri):
                msg = f"entity {entity.iri} has unknown class {entity.class_iri}"
                if mode == "strict":
                    raise OntologyError(msg)
                log.warning(msg)
            self.entities[entity.iri] = entity
            self.revision += 1
            return True

    def entity(self, iri: str) -> Entity:
        return self.entities[iri]

    def mint_iri(self, kind: str, label: str) -> str:
        if kind not in ENTITY_KINDS:
            raise ValueError(f"unknown entity kind {kind!r}")
        base = f"edukg://{kind}/{slugify(label)}"
        iri, n = base, 1
        while iri in self.entities:
            n += 1
            iri = f"{base}-{n}"
        return iri

    def create_entity(self, kind: str, label: str, **fields) -> Entity:
        """Mint an iri, register the entity, and return it."""
        with self.lock:
            iri = self.mint_iri(kind, label)
            entity = Entity(
                iri=iri,
                label=label,
                kind=kind,
                class_iri=fields.pop("class_iri", _KIND_CLASS[kind]),
                **fields,
            )
            self.add_entity(entity)
            return entity

    # -- triples ----------------------------------------------------------

    def add_triple(self, t: Triple, mode: str = "strict") -> bool:
        """Store a triple; returns False (store unchanged) on duplicates.

        Strict mode rejects unresolved iris and object/datatype mismatches;
        lax mode stores them with a warning.
        """
        if mode not in ("strict", "lax"):
            raise ValueError(f"unknown mode {mode!r}")
        with self.lock:
            self._validate(t, mode)
            key = t.key()
            existing = self.triples.get(key)
            if existing is not None:
                existing.audit.append(t.provenance)
                return False
            self.triples[key] = t
            self.by_subject.setdefault(t.subject, set()).add(key)
            self.by_predicate.setdefault(t.predicate, set()).add(key)
            self.by_object.setdefault(object_key(t.obj), set()).add(key)
            self.revision += 1
            return True

    def _validate(self, t: Triple, mode: str) -> None:
        problems: list[Exception] = []
        if t.subject not in self.entities:
            problems.append(UnknownSubject(f"unknown subject {t.subject}"))
        prop = self.ontology.properties.get(t.predicate)
        if prop is None:
            problems.append(UnknownPredicate(f"unknown predicate {t.predicate}"))
        else:
            is_lit = isinstance(t.obj, Literal)
            if prop.kind == OBJECT and is_lit:
                problems.append(
                    ObjectKindMismatch(
                        f"object property {t.predicate} given literal {t.obj.lexical!r}"
                    )
                )
            elif prop.kind == DATATYPE and not is_lit:
                problems.append(
                    ObjectKindMismatch(f"datatype property {t.predicate} given entity {t.obj}")
                )
            elif prop.kind == OBJECT and t.obj not in self.entities:
                problems.append(UnknownObject(f"unknown object {t.obj}"))
        if not problems:
            return
        if mode == "strict":
            raise problems[0]
        for p in problems:
            log.warning("lax add_triple: %s", p)

    def triples_of(
        self,
        subject: str | None = None,
        predicate: str | None = None,
        obj: "str | Literal | None" = None,
    ) -> list[Triple]:
        """Index-backed lookup; None fields are wildcards."""
        candidates: set[tuple] | None = None
        if subject is not None:
            candidates = set(self.by_subject.get(subject, ()))
        if predicate is not None:
            bucket = self.by_predicate.get(predicate, set())
            candidates = bucket.copy() if candidates is None else candidates & bucket
        if obj is not None:
            bucket = self.by_object.get(object_key(obj), set())
            candidates = bucket.copy() if candidates is None else candidates & bucket
        if candidates is None:
            candidates = set(self.triples)
        return [self.triples[k] for k in sorted(candidates)]

    def neighbors(self, iri: str) -> list[tuple[str, str]]:
        """(predicate, neighbor iri) pairs over object-property edges, both directions."""
        out: list[tuple[str, str]] = []
        for t in self.triples_of(subject=iri):
            if not isinstance(t.obj, Literal) and t.obj != iri:
                out.append((t.predicate, t.obj))
        for t in self.triples_of(obj=iri):
            if t.subject != iri:
                out.append((t.predicate, t.subject))
        return sorted(set(out))

    # -- lifecycle --------------------------------------------------------

    def snapshot(self) -> "KnowledgeGraph":
        """Deep-enough copy: safe for readers while the original mutates."""
        with self.lock:
            g = KnowledgeGraph(self.ontology)
            g.entities = {
                iri: Entity(
                    iri=e.iri,
                    label=e.label,
                    aliases=set(e.aliases),
                    description=e.description,
                    class_iri=e.class_iri,
                    kind=e.kind,
                    role_type=e.role_type,
                    resource_kind=e.resource_kind,
                    data_format=e.data_format,
                )
                for iri, e in self.entities.items()
            }
            for key, t in self.triples.items():
                copy = Triple(t.subject, t.predicate, t.obj, t.provenance, list(t.audit))
                g.triples[key] = copy
                g.by_subject.setdefault(t.subject, set()).add(key)
                g.by_predicate.setdefault(t.predicate, set()).add(key)
                g.by_object.setdefault(object_key(t.obj), set()).add(key)
            g.revision = self.revision
            return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            self.entities == other.entities
            and self.triples == other.triples
            and self.ontology.to_dict() == other.ontology.to_dict()
        )

    def __len__(self) -> int:
        return len(self.triples)
