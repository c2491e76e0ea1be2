from kgforge.model.graph import (
    ENTITY_KINDS,
    PROVENANCE_METHODS,
    Entity,
    KnowledgeGraph,
    Literal,
    Provenance,
    RoleType,
    Triple,
    object_key,
    slugify,
)
from kgforge.model.ntriples import export_graph, import_graph, read_graph, write_graph
from kgforge.model.ontology import (
    CLASS_CONCEPT,
    CLASS_EXTERNAL_DATUM,
    CLASS_RESOURCE,
    CLASS_ROLE,
    DATATYPE,
    LITERAL_DATATYPES,
    OBJECT,
    PROP_CONTENT,
    PROP_EXTERNAL_EQUIVALENT,
    PROP_INDEXED_BY,
    PROP_MENTIONS_CONCEPT,
    PROP_PARENT_CONCEPT,
    PROP_RAW_ASSERTION,
    PROP_ROLE_TYPE,
    Ontology,
    OntologyClass,
    PropertyDef,
)

__all__ = [
    "ENTITY_KINDS",
    "PROVENANCE_METHODS",
    "Entity",
    "KnowledgeGraph",
    "Literal",
    "Provenance",
    "RoleType",
    "Triple",
    "object_key",
    "slugify",
    "export_graph",
    "import_graph",
    "read_graph",
    "write_graph",
    "CLASS_CONCEPT",
    "CLASS_EXTERNAL_DATUM",
    "CLASS_RESOURCE",
    "CLASS_ROLE",
    "DATATYPE",
    "LITERAL_DATATYPES",
    "OBJECT",
    "PROP_CONTENT",
    "PROP_EXTERNAL_EQUIVALENT",
    "PROP_INDEXED_BY",
    "PROP_MENTIONS_CONCEPT",
    "PROP_PARENT_CONCEPT",
    "PROP_RAW_ASSERTION",
    "PROP_ROLE_TYPE",
    "Ontology",
    "OntologyClass",
    "PropertyDef",
]
