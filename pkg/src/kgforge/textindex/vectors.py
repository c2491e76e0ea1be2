"""Sparse TF-IDF vectors and cosine similarity."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from kgforge.errors import DimensionMismatch
from kgforge.textindex.tokenize import TokenizerConfig, tokenize


@dataclass(frozen=True)
class SparseVector:
    dim: int
    weights: dict[int, float] = field(default_factory=dict)

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))


def cosine(a: SparseVector, b: SparseVector) -> float:
    """a.b / (|a||b|); 0 when either norm is 0."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"vector dims {a.dim} != {b.dim}")
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    small, large = (a.weights, b.weights) if len(a.weights) <= len(b.weights) else (b.weights, a.weights)
    dot = sum(w * large.get(i, 0.0) for i, w in small.items())
    return dot / (na * nb)


def cosine_dense(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise DimensionMismatch(f"vector shapes {a.shape} != {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b)) / (na * nb)


class TfIdfModel:
    """idf = ln(N/df), raw term counts for tf; smoothing off by default.

    Vector dimension is fixed at |vocabulary|; out-of-vocabulary tokens are
    ignored at vectorization time.
    """

    def __init__(self, corpus: list[str], cfg: TokenizerConfig | None = None, smooth: bool = False):
        self.cfg = cfg or TokenizerConfig()
        self.smooth = smooth
        self.doc_count = len(corpus)
        df: Counter[str] = Counter()
        for doc in corpus:
            df.update(set(tokenize(doc, self.cfg)))
        self.doc_freq: dict[str, int] = dict(df)
        self.vocabulary: dict[str, int] = {t: i for i, t in enumerate(sorted(df))}

    @property
    def dim(self) -> int:
        return len(self.vocabulary)

    def idf(self, token: str) -> float:
        df = self.doc_freq[token]
        if self.smooth:
            return math.log((1 + self.doc_count) / (1 + df))
        return math.log(self.doc_count / df)

    def vector(self, text: str) -> SparseVector:
        counts = Counter(tokenize(text, self.cfg))
        weights = {
            self.vocabulary[t]: tf * self.idf(t)
            for t, tf in counts.items()
            if t in self.vocabulary
        }
        return SparseVector(self.dim, {i: w for i, w in weights.items() if w != 0.0})

    def similarity(self, text_a: str, text_b: str) -> float:
        return cosine(self.vector(text_a), self.vector(text_b))
