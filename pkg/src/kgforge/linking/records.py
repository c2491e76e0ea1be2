"""Heterogeneous input records: unstructured text, field records, external
entities. JSONL wire format uses a `type` discriminator per record."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

UNSTRUCTURED = "unstructured"
SEMI_STRUCTURED = "semiStructured"
STRUCTURED = "structured"


@dataclass(frozen=True)
class HeteroRecord:
    record_id: str
    kind: str
    text: str = ""
    caption: str | None = None
    fields: tuple[tuple[str, str], ...] = ()
    focus_field: str = ""
    external_iri: str = ""
    label: str = ""
    description: str = ""

    def __post_init__(self):
        if self.kind not in (UNSTRUCTURED, SEMI_STRUCTURED, STRUCTURED):
            raise ValueError(f"unknown record type {self.kind!r}")
        if self.kind == SEMI_STRUCTURED:
            if not self.fields:
                raise ValueError(f"record {self.record_id} has no fields")
            if self.focus_field not in {name for name, _ in self.fields}:
                raise ValueError(
                    f"record {self.record_id} focus field {self.focus_field!r} not among columns"
                )

    def content(self) -> str:
        """The text the linker scans for mentions."""
        if self.kind == UNSTRUCTURED:
            return self.text if self.text else (self.caption or "")
        if self.kind == SEMI_STRUCTURED:
            return dict(self.fields)[self.focus_field]
        return self.label

    def to_dict(self) -> dict:
        if self.kind == UNSTRUCTURED:
            d: dict = {"type": self.kind, "recordId": self.record_id, "text": self.text}
            if self.caption is not None:
                d["caption"] = self.caption
            return d
        if self.kind == SEMI_STRUCTURED:
            return {
                "type": self.kind,
                "recordId": self.record_id,
                "fields": [[k, v] for k, v in self.fields],
                "focusField": self.focus_field,
            }
        return {
            "type": self.kind,
            "recordId": self.record_id,
            "externalIri": self.external_iri,
            "label": self.label,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HeteroRecord":
        kind = d["type"]
        if kind == UNSTRUCTURED:
            return cls(
                record_id=d["recordId"],
                kind=kind,
                text=d.get("text", ""),
                caption=d.get("caption"),
            )
        if kind == SEMI_STRUCTURED:
            return cls(
                record_id=d["recordId"],
                kind=kind,
                fields=tuple((k, v) for k, v in d["fields"]),
                focus_field=d["focusField"],
            )
        return cls(
            record_id=d["recordId"],
            kind=kind,
            external_iri=d.get("externalIri", ""),
            label=d.get("label", ""),
            description=d.get("description", ""),
        )


def load_records(path: "str | Path") -> list[HeteroRecord]:
    out: list[HeteroRecord] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(HeteroRecord.from_dict(json.loads(line)))
    return out


def save_records(records: list[HeteroRecord], path: "str | Path") -> None:
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")
