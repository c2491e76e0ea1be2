"""Deterministic tokenizers: character, overlapping char n-gram, whitespace.

Character and n-gram modes never emit whitespace tokens; n-grams are taken
over the whitespace-stripped character stream.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

MODES = ("character", "charNgram", "whitespace")

# Combining marks attach to the preceding base character so accented text
# tokenizes as one unit per visible character.
_COMBINING = ("Mn", "Mc", "Me")


@dataclass(frozen=True)
class TokenizerConfig:
    mode: str = "character"
    n: int = 2
    lowercase: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown tokenizer mode {self.mode!r}")
        if self.mode == "charNgram" and self.n < 2:
            raise ValueError("charNgram requires n >= 2")


def normalize(text: str, lowercase: bool = True) -> str:
    text = unicodedata.normalize("NFC", text)
    return text.lower() if lowercase else text


def graphemes(text: str) -> list[str]:
    out: list[str] = []
    for ch in text:
        if out and unicodedata.category(ch) in _COMBINING:
            out[-1] += ch
        else:
            out.append(ch)
    return out


def tokenize(text: str, cfg: TokenizerConfig | None = None) -> list[str]:
    cfg = cfg or TokenizerConfig()
    text = normalize(text, cfg.lowercase)
    if not text:
        return []
    if cfg.mode == "whitespace":
        return text.split()
    chars = [g for g in graphemes(text) if not g.isspace()]
    if cfg.mode == "character":
        return chars
    if len(chars) < cfg.n:
        return ["".join(chars)] if chars else []
    return ["".join(chars[i : i + cfg.n]) for i in range(len(chars) - cfg.n + 1)]
