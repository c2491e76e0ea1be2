"""Inverted index over entity labels, aliases, and descriptions.

Search ranks in three tiers: exact match, prefix match, then within-edit
(bounded Levenshtein, with substring containment folded into the same tier so
description mentions are retrievable). Within a tier, hits are ordered by
descending token overlap with the query, then lexicographic iri.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from kgforge.errors import EmptyQuery, IndexFormatError
from kgforge.model.graph import Entity
from kgforge.textindex.tokenize import TokenizerConfig, normalize, tokenize

MAGIC = b"KGFI"
FORMAT_VERSION = 1

EXACT = "exact"
PREFIX = "prefix"
WITHIN_EDIT = "withinEdit"

_TIER_ORDER = {EXACT: 0, PREFIX: 1, WITHIN_EDIT: 2}


@dataclass(frozen=True)
class SearchHit:
    iri: str
    match_kind: str
    score: float


def levenshtein(a: str, b: str, cap: int | None = None) -> int:
    """Edit distance; stops early and returns cap+1 once the cap is exceeded."""
    if a == b:
        return 0
    if cap is not None and abs(len(a) - len(b)) > cap:
        return cap + 1
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        row_min = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            val = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            cur.append(val)
            row_min = min(row_min, val)
        if cap is not None and row_min > cap:
            return cap + 1
        prev = cur
    return prev[-1]


class InvertedIndex:
    """Immutable after build; rebuilds produce a fresh snapshot."""

    def __init__(
        self,
        entries: list[tuple[str, str, str]],
        cfg: TokenizerConfig,
        snapshot_id: str = "",
    ):
        # entries: (entity iri, field name, normalized field text)
        self.entries = entries
        self.cfg = cfg
        self.snapshot_id = snapshot_id
        self.postings: dict[str, list[tuple[str, str]]] = {}
        for iri, fieldname, text in entries:
            for token in set(tokenize(text, cfg)):
                self.postings.setdefault(token, []).append((iri, fieldname))
        for token in self.postings:
            self.postings[token] = sorted(set(self.postings[token]))

    @property
    def entity_iris(self) -> set[str]:
        return {iri for iri, _, _ in self.entries}


def build_index(
    entities: Iterable[Entity],
    cfg: TokenizerConfig | None = None,
    snapshot_id: str = "",
) -> InvertedIndex:
    cfg = cfg or TokenizerConfig()
    entries: list[tuple[str, str, str]] = []
    for e in sorted(entities, key=lambda e: e.iri):
        entries.append((e.iri, "label", normalize(e.label, cfg.lowercase)))
        for alias in sorted(e.aliases):
            entries.append((e.iri, "alias", normalize(alias, cfg.lowercase)))
        if e.description:
            entries.append((e.iri, "description", normalize(e.description, cfg.lowercase)))
    return InvertedIndex(entries, cfg, snapshot_id)


def _jaccard(a: set[str], b: set[str]) -> float:
    if not a and not b:
        return 0.0
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def fuzzy_search(
    index: InvertedIndex,
    query: str,
    k: int = 10,
    max_edit: int = 1,
) -> list[SearchHit]:
    if not query or not query.strip():
        raise EmptyQuery("query must be nonempty")
    q = normalize(query.strip(), index.cfg.lowercase)
    q_tokens = set(tokenize(q, index.cfg))

    # Posting-based pruning is safe for queries long enough that one token
    # must survive any in-budget edit; short queries fall back to a full scan.
    candidate_iris: set[str] | None = None
    if len(q) > 2 and q_tokens:
        candidate_iris = {
            iri for t in q_tokens for iri, _ in index.postings.get(t, ())
        }
        if not candidate_iris:
            candidate_iris = None

    best: dict[str, tuple[int, float]] = {}
    for iri, _fieldname, text in index.entries:
        if candidate_iris is not None and iri not in candidate_iris:
            continue
        if text == q:
            kind = EXACT
        elif text.startswith(q):
            kind = PREFIX
        elif q in text or levenshtein(text, q, cap=max_edit) <= max_edit:
            kind = WITHIN_EDIT
        else:
            continue
        tier = _TIER_ORDER[kind]
        score = _jaccard(q_tokens, set(tokenize(text, index.cfg)))
        cur = best.get(iri)
        if cur is None or (tier, -score) < (cur[0], -cur[1]):
            best[iri] = (tier, score)

    ranked = sorted(best.items(), key=lambda kv: (kv[1][0], -kv[1][1], kv[0]))
    kinds = {v: k for k, v in _TIER_ORDER.items()}
    return [SearchHit(iri, kinds[tier], score) for iri, (tier, score) in ranked[:k]]


def save_index(index: InvertedIndex, path: "str | Path") -> None:
    payload = json.dumps(
        {
            "snapshotId": index.snapshot_id,
            "tokenizer": {
                "mode": index.cfg.mode,
                "n": index.cfg.n,
                "lowercase": index.cfg.lowercase,
            },
            "entries": index.entries,
        },
        ensure_ascii=False,
        sort_keys=True,
    ).encode("utf-8")
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(bytes([FORMAT_VERSION]))
        f.write(struct.pack(">Q", len(payload)))
        f.write(payload)


def load_index(path: "str | Path") -> InvertedIndex:
    blob = Path(path).read_bytes()
    if len(blob) < len(MAGIC) + 9 or blob[: len(MAGIC)] != MAGIC:
        raise IndexFormatError(f"{path}: not an index file")
    version = blob[len(MAGIC)]
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"{path}: unsupported format version {version}")
    (length,) = struct.unpack(">Q", blob[len(MAGIC) + 1 : len(MAGIC) + 9])
    body = blob[len(MAGIC) + 9 :]
    if len(body) != length:
        raise IndexFormatError(f"{path}: truncated payload")
    try:
        data = json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"{path}: corrupt payload: {exc}") from exc
    cfg = TokenizerConfig(
        mode=data["tokenizer"]["mode"],
        n=data["tokenizer"]["n"],
        lowercase=data["tokenizer"]["lowercase"],
    )
    entries = [tuple(row) for row in data["entries"]]
    return InvertedIndex(entries, cfg, data.get("snapshotId", ""))
