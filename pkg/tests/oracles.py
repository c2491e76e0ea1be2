"""Independent reference implementations used to cross-check the library.

Each function re-derives a quantity from its primary definition with plain
dictionary/list arithmetic and deliberately shares no code with the package
under test. Keep these naive and obvious; speed does not matter here.

Preconditions: text inputs are assumed to be NFC-normalized ASCII unless a
caller lowercases for itself, so `str.lower()` stands in for full
normalization.
"""

from __future__ import annotations

import math


# ---------------------------------------------------------------------------
# Word-level TF-IDF over a small corpus (tokens = lowercased whitespace split)


def _tokens(text: str) -> list[str]:
    return text.lower().split()


def tfidf_vector(text: str, corpus: list[str]) -> dict[str, float]:
    """weight(t) = count(t in text) * ln(N / df(t)), OOV tokens dropped."""
    n = len(corpus)
    docs = [set(_tokens(d)) for d in corpus]
    vocab = set().union(*docs) if docs else set()
    weights: dict[str, float] = {}
    for tok in _tokens(text):
        if tok not in vocab:
            continue
        weights[tok] = weights.get(tok, 0.0) + 1.0
    for tok in list(weights):
        df = sum(1 for d in docs if tok in d)
        weights[tok] *= math.log(n / df)
    return weights


def cosine(a: dict[str, float], b: dict[str, float]) -> float:
    na = math.sqrt(sum(w * w for w in a.values()))
    nb = math.sqrt(sum(w * w for w in b.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    dot = sum(w * b.get(t, 0.0) for t, w in a.items())
    return dot / (na * nb)


# ---------------------------------------------------------------------------
# Section-topic relevance: cosine gated by mention history


def mentioned(section_text: str, label: str, aliases: tuple[str, ...] = ()) -> int:
    hay = section_text.lower()
    return 1 if any(term.lower() in hay for term in (label, *aliases)) else 0


def section_topic_score(
    section_texts: list[str],
    label: str,
    aliases: tuple[str, ...],
    i: int,
    mode: str,
) -> float:
    """Score of the topic at 1-based section i given the whole section list."""
    topic_text = " ".join([label, *aliases])
    d = cosine(
        tfidf_vector(section_texts[i - 1], section_texts),
        tfidf_vector(topic_text, section_texts),
    )
    gate = 1.0
    for j in range(i - 1):
        o = float(mentioned(section_texts[j], label, aliases))
        gate *= o if mode == "literal" else 1.0 - o
    return d * gate


# ---------------------------------------------------------------------------
# Levenshtein distance, full-matrix dynamic programme


def levenshtein(a: str, b: str) -> int:
    rows = len(a) + 1
    cols = len(b) + 1
    dist = [[0] * cols for _ in range(rows)]
    for r in range(rows):
        dist[r][0] = r
    for c in range(cols):
        dist[0][c] = c
    for r in range(1, rows):
        for c in range(1, cols):
            cost = 0 if a[r - 1] == b[c - 1] else 1
            dist[r][c] = min(
                dist[r - 1][c] + 1,
                dist[r][c - 1] + 1,
                dist[r - 1][c - 1] + cost,
            )
    return dist[-1][-1]


# ---------------------------------------------------------------------------
# Neighborhood-weighted expansion score


def expansion_score(
    sim_entity_candidate: float,
    neighbor_terms: list[tuple[float, float]],
) -> float:
    """Sim(e,c) * (1/|N|) * sum of w_n * Sim(n,c); 0 without neighbors."""
    if not neighbor_terms:
        return 0.0
    total = 0.0
    for weight, sim in neighbor_terms:
        total += weight * sim
    return sim_entity_candidate * total / len(neighbor_terms)


# ---------------------------------------------------------------------------
# Precision / recall / F1 from raw counts


def prf(correct: int, predicted: int, gold: int) -> tuple[float, float, float]:
    p = correct / predicted if predicted else 0.0
    r = correct / gold if gold else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f
