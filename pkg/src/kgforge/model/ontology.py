"""Ontology schema: classes, properties, and the engine's built-in vocabulary.

The curriculum ontology is data, loaded from a JSON schema file, so the
acquisition pipeline stays hot-swappable. A small built-in vocabulary (the
storage hooks the engine itself mints triples with) is merged into every
loaded ontology.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from kgforge.errors import OntologyError

OBJECT = "object"
DATATYPE = "datatype"

LITERAL_DATATYPES = ("text", "integer", "decimal", "date")

# Classes every graph can rely on, regardless of the loaded curriculum schema.
CLASS_CONCEPT = "edukg://class/Concept"
CLASS_ROLE = "edukg://class/RhetoricalRole"
CLASS_RESOURCE = "edukg://class/Resource"
CLASS_EXTERNAL_DATUM = "edukg://class/ExternalDatum"

# Properties the engine mints triples with.
PROP_PARENT_CONCEPT = "edukg://prop/parentConcept"
PROP_ROLE_TYPE = "edukg://prop/roleType"
PROP_CONTENT = "edukg://prop/content"
PROP_MENTIONS_CONCEPT = "edukg://prop/mentionsConcept"
PROP_INDEXED_BY = "edukg://prop/indexedBy"
PROP_EXTERNAL_EQUIVALENT = "edukg://prop/externalEquivalent"
PROP_RAW_ASSERTION = "edukg://prop/rawAssertion"


@dataclass
class OntologyClass:
    iri: str
    label: str
    parent: str | None = None
    subjects: set[str] = field(default_factory=set)


@dataclass
class PropertyDef:
    iri: str
    label: str
    kind: str  # OBJECT | DATATYPE
    domain: str | None = None
    range: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in (OBJECT, DATATYPE):
            raise OntologyError(f"property {self.iri}: kind must be object or datatype")


def _builtin_classes() -> list[OntologyClass]:
    return [
        OntologyClass(CLASS_CONCEPT, "Knowledge Concept"),
        OntologyClass(CLASS_ROLE, "Rhetorical Role"),
        OntologyClass(CLASS_RESOURCE, "Educational Resource"),
        OntologyClass(CLASS_EXTERNAL_DATUM, "External Heterogeneous Data"),
    ]


def _builtin_properties() -> list[PropertyDef]:
    return [
        PropertyDef(PROP_PARENT_CONCEPT, "parent concept", OBJECT, range=CLASS_CONCEPT),
        PropertyDef(PROP_ROLE_TYPE, "role type", DATATYPE, range="text"),
        PropertyDef(PROP_CONTENT, "content", DATATYPE, range="text"),
        PropertyDef(PROP_MENTIONS_CONCEPT, "mentions concept", OBJECT, range=CLASS_CONCEPT),
        PropertyDef(PROP_INDEXED_BY, "indexed by", OBJECT, range=CLASS_CONCEPT),
        # Alignment to an external graph is stored as a literal iri so a strict
        # store never holds a dangling node reference.
        PropertyDef(PROP_EXTERNAL_EQUIVALENT, "external equivalent", DATATYPE, range="text"),
        PropertyDef(PROP_RAW_ASSERTION, "raw assertion", DATATYPE, range="text"),
    ]


class Ontology:
    """Validated class forest plus property definitions."""

    def __init__(
        self,
        classes: Iterable[OntologyClass] = (),
        properties: Iterable[PropertyDef] = (),
        include_builtins: bool = True,
    ):
        self.classes: dict[str, OntologyClass] = {}
        self.properties: dict[str, PropertyDef] = {}
        for c in classes:
            self.add_class(c)
        for p in properties:
            self.add_property(p)
        if include_builtins:
            for c in _builtin_classes():
                self.classes.setdefault(c.iri, c)
            for p in _builtin_properties():
                existing = self.properties.get(p.iri)
                if existing is not None and existing.kind != p.kind:
                    raise OntologyError(
                        f"schema redefines built-in property {p.iri} with kind {existing.kind}"
                    )
                self.properties.setdefault(p.iri, p)
        self._check_parents()

    def add_class(self, cls: OntologyClass) -> None:
        if cls.iri in self.classes:
            raise OntologyError(f"duplicate class iri {cls.iri}")
        self.classes[cls.iri] = cls

    def add_property(self, prop: PropertyDef) -> None:
        if prop.iri in self.properties:
            raise OntologyError(f"duplicate property iri {prop.iri}")
        if prop.kind == OBJECT and prop.range in LITERAL_DATATYPES:
            raise OntologyError(f"object property {prop.iri} has literal range {prop.range}")
        if prop.kind == DATATYPE and prop.range is not None and prop.range not in LITERAL_DATATYPES:
            raise OntologyError(f"datatype property {prop.iri} has entity range {prop.range}")
        self.properties[prop.iri] = prop

    def _check_parents(self) -> None:
        for cls in self.classes.values():
            if cls.parent is not None and cls.parent not in self.classes:
                raise OntologyError(f"class {cls.iri}: parent {cls.parent} not defined")
        # parent links must form a forest
        for cls in self.classes.values():
            seen = {cls.iri}
            cur = cls.parent
            while cur is not None:
                if cur in seen:
                    raise OntologyError(f"class hierarchy cycle through {cur}")
                seen.add(cur)
                cur = self.classes[cur].parent

    def has_class(self, iri: str) -> bool:
        return iri in self.classes

    def property(self, iri: str) -> PropertyDef | None:
        return self.properties.get(iri)

    def properties_of_kind(self, kind: str) -> list[PropertyDef]:
        return [p for p in self.properties.values() if p.kind == kind]

    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "iri": c.iri,
                    "label": c.label,
                    "parent": c.parent,
                    "subjects": sorted(c.subjects),
                }
                for c in sorted(self.classes.values(), key=lambda c: c.iri)
            ],
            "properties": [
                {
                    "iri": p.iri,
                    "label": p.label,
                    "kind": p.kind,
                    "domain": p.domain,
                    "range": p.range,
                }
                for p in sorted(self.properties.values(), key=lambda p: p.iri)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Ontology":
        classes = [
            OntologyClass(
                iri=c["iri"],
                label=c.get("label", c["iri"]),
                parent=c.get("parent"),
                subjects=set(c.get("subjects", ())),
            )
            for c in data.get("classes", ())
        ]
        properties = [
            PropertyDef(
                iri=p["iri"],
                label=p.get("label", p["iri"]),
                kind=p.get("kind", DATATYPE),
                domain=p.get("domain"),
                range=p.get("range"),
            )
            for p in data.get("properties", ())
        ]
        return cls(classes, properties)

    @classmethod
    def load(cls, path: str | Path) -> "Ontology":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))
