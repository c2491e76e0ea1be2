"""Shared text utilities: sentence spans and longest-match term spotting."""

from __future__ import annotations

import re
import unicodedata

# Sentence terminators cover both halfwidth and fullwidth punctuation; a
# terminator ends a sentence only before whitespace or end of text.
_TERMINATORS = "。．.!?！？"


def split_sentences(text: str) -> list[tuple[int, int]]:
    """(start, end) spans covering all non-gap text, in order."""
    spans: list[tuple[int, int]] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in _TERMINATORS and (i + 1 >= n or text[i + 1].isspace()):
            spans.append((start, i + 1))
            i += 1
            while i < n and text[i].isspace():
                i += 1
            start = i
        else:
            i += 1
    if start < n and text[start:].strip():
        spans.append((start, n))
    return spans


def sentence_at(text: str, offset: int) -> tuple[int, int]:
    for start, end in split_sentences(text):
        if start <= offset < end:
            return start, end
    return 0, len(text)


def _is_word_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def _bounded(text: str, start: int, end: int) -> bool:
    # Word boundaries only constrain ascii terms; CJK has no word delimiters.
    if start > 0 and _is_word_char(text[start]) and _is_word_char(text[start - 1]):
        return False
    if end < len(text) and _is_word_char(text[end - 1]) and _is_word_char(text[end]):
        return False
    return True


def find_term_spans(text: str, terms: dict[str, str]) -> list[tuple[int, int, str, str]]:
    """Longest-match, non-overlapping occurrences of `terms` keys in `text`.

    Returns (start, end, surface, term key) sorted by start. Matching is
    case-insensitive on NFC-normalized terms; offsets refer to `text` as given.
    """
    taken = [False] * len(text)
    found: list[tuple[int, int, str, str]] = []
    ordered = sorted(terms, key=lambda t: (-len(t), t))
    for term in ordered:
        norm = unicodedata.normalize("NFC", term)
        if not norm:
            continue
        pattern = re.compile(re.escape(norm), re.IGNORECASE)
        for m in pattern.finditer(text):
            s, e = m.span()
            if e == s or any(taken[s:e]) or not _bounded(text, s, e):
                continue
            for i in range(s, e):
                taken[i] = True
            found.append((s, e, text[s:e], term))
    return sorted(found)


def contains_term(text: str, term: str) -> bool:
    return bool(find_term_spans(text, {term: term}))
