"""N-Triples-subset serialization with a JSON sidecar.

One triple per line, UTF-8, sorted for determinism. The sidecar carries the
ontology, entity metadata, and per-line provenance (aligned by triple index).
No blank nodes, named graphs, or reification.
"""

from __future__ import annotations

import json
from pathlib import Path

from kgforge.errors import ParseError
from kgforge.model.graph import (
    Entity,
    KnowledgeGraph,
    Literal,
    Provenance,
    RoleType,
    Triple,
    object_key,
)
from kgforge.model.ontology import Ontology

_DATATYPE_NS = "edukg://datatype/"

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def escape_literal(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape_literal(text: str, line_no: int) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(text):
            raise ParseError("dangling escape at end of literal", line_no)
        code = text[i + 1]
        if code not in _UNESCAPES:
            raise ParseError(f"unsupported escape \\{code}", line_no)
        out.append(_UNESCAPES[code])
        i += 2
    return "".join(out)


def render_term(obj: "str | Literal") -> str:
    if isinstance(obj, Literal):
        quoted = f'"{escape_literal(obj.lexical)}"'
        if obj.datatype != "text":
            return f"{quoted}^^<{_DATATYPE_NS}{obj.datatype}>"
        return quoted
    return f"<{obj}>"


def render_triple(t: Triple) -> str:
    return f"<{t.subject}> <{t.predicate}> {render_term(t.obj)} ."


def _parse_iri(line: str, pos: int, line_no: int) -> tuple[str, int]:
    if pos >= len(line) or line[pos] != "<":
        raise ParseError(f"expected '<' at column {pos + 1}", line_no)
    end = line.find(">", pos + 1)
    if end < 0:
        raise ParseError("unterminated iri", line_no)
    return line[pos + 1 : end], end + 1


def _parse_object(line: str, pos: int, line_no: int) -> tuple["str | Literal", int]:
    if pos < len(line) and line[pos] == "<":
        return _parse_iri(line, pos, line_no)
    if pos >= len(line) or line[pos] != '"':
        raise ParseError(f"expected iri or literal at column {pos + 1}", line_no)
    i = pos + 1
    while i < len(line):
        if line[i] == "\\":
            i += 2
            continue
        if line[i] == '"':
            break
        i += 1
    if i >= len(line):
        raise ParseError("unterminated literal", line_no)
    lexical = unescape_literal(line[pos + 1 : i], line_no)
    pos = i + 1
    datatype = "text"
    if line.startswith("^^", pos):
        dt_iri, pos = _parse_iri(line, pos + 2, line_no)
        if not dt_iri.startswith(_DATATYPE_NS):
            raise ParseError(f"unsupported datatype iri {dt_iri}", line_no)
        datatype = dt_iri[len(_DATATYPE_NS) :]
    return Literal(lexical, datatype), pos


def _skip_space(line: str, pos: int) -> int:
    while pos < len(line) and line[pos] in " \t":
        pos += 1
    return pos


def parse_line(line: str, line_no: int) -> tuple[str, str, "str | Literal"]:
    subject, pos = _parse_iri(line, 0, line_no)
    pos = _skip_space(line, pos)
    predicate, pos = _parse_iri(line, pos, line_no)
    pos = _skip_space(line, pos)
    obj, pos = _parse_object(line, pos, line_no)
    pos = _skip_space(line, pos)
    if pos >= len(line) or line[pos] != ".":
        raise ParseError("missing terminating '.'", line_no)
    if line[pos + 1 :].strip():
        raise ParseError("trailing content after '.'", line_no)
    return subject, predicate, obj


def _entity_to_dict(e: Entity) -> dict:
    d: dict = {
        "iri": e.iri,
        "label": e.label,
        "aliases": sorted(e.aliases),
        "description": e.description,
        "classIri": e.class_iri,
        "kind": e.kind,
    }
    if e.role_type is not None:
        d["roleType"] = e.role_type.value
    if e.resource_kind is not None:
        d["resourceKind"] = e.resource_kind
    if e.data_format is not None:
        d["dataFormat"] = e.data_format
    return d


def _entity_from_dict(d: dict) -> Entity:
    return Entity(
        iri=d["iri"],
        label=d["label"],
        aliases=set(d.get("aliases", ())),
        description=d.get("description", ""),
        class_iri=d["classIri"],
        kind=d.get("kind", "concept"),
        role_type=RoleType(d["roleType"]) if "roleType" in d else None,
        resource_kind=d.get("resourceKind"),
        data_format=d.get("dataFormat"),
    )


def export_graph(kg: KnowledgeGraph) -> tuple[str, dict]:
    """Render (nt text, sidecar dict); line order is the sort of rendered lines."""
    rendered = sorted((render_triple(t), t) for t in kg.triples.values())
    lines = [line for line, _ in rendered]
    provenance = [
        {"provenance": t.provenance.to_dict(), "audit": [a.to_dict() for a in t.audit]}
        for _, t in rendered
    ]
    meta = {
        "revision": kg.revision,
        "ontology": kg.ontology.to_dict(),
        "entities": [_entity_to_dict(kg.entities[iri]) for iri in sorted(kg.entities)],
        "provenance": provenance,
    }
    text = "".join(line + "\n" for line in lines)
    return text, meta


def import_graph(nt_text: str, meta: dict) -> KnowledgeGraph:
    ontology = Ontology.from_dict(meta["ontology"])
    kg = KnowledgeGraph(ontology)
    for d in meta.get("entities", ()):
        kg.add_entity(_entity_from_dict(d), mode="lax")
    prov_rows = meta.get("provenance", [])
    idx = 0
    # split on newline only: the renderer escapes \n and \r inside literals,
    # but unicode line separators (U+0085, U+2028, ...) pass through verbatim
    # and must not break a line
    for line_no, raw in enumerate(nt_text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        subject, predicate, obj = parse_line(line, line_no)
        if idx >= len(prov_rows):
            raise ParseError("provenance sidecar shorter than triple list", line_no)
        row = prov_rows[idx]
        idx += 1
        t = Triple(
            subject=subject,
            predicate=predicate,
            obj=obj,
            provenance=Provenance.from_dict(row["provenance"]),
            audit=[Provenance.from_dict(a) for a in row.get("audit", ())],
        )
        if kg.triples.get(t.key()) is not None:
            raise ParseError("duplicate triple", line_no)
        key = t.key()
        kg.triples[key] = t
        kg.by_subject.setdefault(t.subject, set()).add(key)
        kg.by_predicate.setdefault(t.predicate, set()).add(key)
        kg.by_object.setdefault(object_key(t.obj), set()).add(key)
    if idx != len(prov_rows):
        raise ParseError("provenance sidecar longer than triple list", idx + 1)
    kg.revision = int(meta.get("revision", len(kg.triples)))
    return kg


def write_graph(kg: KnowledgeGraph, nt_path: "str | Path", meta_path: "str | Path") -> None:
    text, meta = export_graph(kg)
    Path(nt_path).write_text(text, encoding="utf-8")
    Path(meta_path).write_text(
        json.dumps(meta, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def read_graph(nt_path: "str | Path", meta_path: "str | Path") -> KnowledgeGraph:
    nt_text = Path(nt_path).read_text(encoding="utf-8")
    meta = json.loads(Path(meta_path).read_text(encoding="utf-8"))
    return import_graph(nt_text, meta)
