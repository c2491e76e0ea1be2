"""Sentence-embedding providers behind a common deterministic contract.

The default provider hashes character trigrams into a fixed-dimension count
vector and L2-normalizes, so every coordinate is nonnegative and cosines of
nonempty texts land in [0, 1]. A remote provider speaks JSON over HTTP and
must be deterministic per model version.
"""

from __future__ import annotations

import hashlib
from typing import Protocol

import httpx
import numpy as np

from kgforge.errors import ConfigError, ProviderUnavailable
from kgforge.textindex.tokenize import normalize

DEFAULT_DIM = 256


class EmbeddingProvider(Protocol):
    name: str
    dim: int

    def embed(self, texts: list[str]) -> np.ndarray: ...


def _bucket(gram: str, dim: int) -> int:
    digest = hashlib.blake2b(gram.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % dim


class HashedTrigramProvider:
    """Counts hashed character trigrams; texts shorter than 3 chars hash whole."""

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim < 1:
            raise ConfigError(f"embedding dim must be >= 1, got {dim}")
        self.dim = dim
        self.name = f"hashedTrigram-{dim}"

    def embed_one(self, text: str) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.float64)
        t = normalize(text)
        t = " ".join(t.split())
        if not t:
            return v
        grams = [t[i : i + 3] for i in range(len(t) - 2)] if len(t) >= 3 else [t]
        for gram in grams:
            v[_bucket(gram, self.dim)] += 1.0
        norm = np.linalg.norm(v)
        return v / norm if norm > 0 else v

    def embed(self, texts: list[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float64)
        return np.stack([self.embed_one(t) for t in texts])


class RemoteProvider:
    """POST /embed {texts: [..]} -> {vectors: [[..]]}."""

    def __init__(self, url: str, dim: int = DEFAULT_DIM, timeout: float = 10.0):
        self.url = url.rstrip("/")
        self.dim = dim
        self.name = f"remote:{self.url}"
        self.timeout = timeout

    def embed(self, texts: list[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float64)
        try:
            resp = httpx.post(f"{self.url}/embed", json={"texts": texts}, timeout=self.timeout)
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"embedding service unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise ProviderUnavailable(f"embedding service returned {resp.status_code}")
        try:
            vectors = resp.json()["vectors"]
            arr = np.asarray(vectors, dtype=np.float64)
        except (KeyError, ValueError, TypeError) as exc:
            raise ProviderUnavailable(f"malformed embedding response: {exc}") from exc
        if arr.ndim != 2 or arr.shape[0] != len(texts):
            raise ProviderUnavailable(f"embedding response shape {arr.shape} mismatched")
        return arr


def embed_sentence(provider: EmbeddingProvider, text: str) -> np.ndarray:
    return provider.embed([text])[0]


def get_provider(spec: dict | None = None) -> EmbeddingProvider:
    """Build a provider from a config mapping: {'name': ..., ...}."""
    spec = spec or {}
    name = spec.get("name", "hashedTrigram")
    if name == "hashedTrigram":
        return HashedTrigramProvider(dim=int(spec.get("dim", DEFAULT_DIM)))
    if name == "remote":
        if "url" not in spec:
            raise ConfigError("remote embedding provider requires a url")
        return RemoteProvider(
            url=spec["url"],
            dim=int(spec.get("dim", DEFAULT_DIM)),
            timeout=float(spec.get("timeout", 10.0)),
        )
    raise ConfigError(f"unknown embedding provider {name!r}")
