import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kgforge.errors import ConfigError, ProviderUnavailable
from kgforge.textindex.embedding import (
    HashedTrigramProvider,
    RemoteProvider,
    embed_sentence,
    get_provider,
)


def test_deterministic_across_instances():
    a = HashedTrigramProvider(dim=64)
    b = HashedTrigramProvider(dim=64)
    texts = ["Newton's first law", "牛顿第一定律", ""]
    assert np.array_equal(a.embed(texts), b.embed(texts))


def test_unit_norm_nonempty():
    p = HashedTrigramProvider(dim=32)
    v = p.embed_one("some text long enough")
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert (v >= 0).all()


def test_empty_text_zero_vector():
    p = HashedTrigramProvider(dim=32)
    assert not p.embed_one("   ").any()


def test_short_text_hashes_whole():
    p = HashedTrigramProvider(dim=32)
    assert np.linalg.norm(p.embed_one("ab")) == pytest.approx(1.0)


def test_whitespace_collapse_invariance():
    p = HashedTrigramProvider(dim=64)
    assert np.array_equal(p.embed_one("a  b\tc"), p.embed_one("a b c"))


def test_batch_matches_single():
    p = HashedTrigramProvider(dim=64)
    batch = p.embed(["alpha", "beta"])
    assert np.array_equal(batch[0], p.embed_one("alpha"))
    assert np.array_equal(batch[1], p.embed_one("beta"))
    assert p.embed([]).shape == (0, 64)


@given(st.text(max_size=30))
@settings(max_examples=100)
def test_norm_at_most_one(text):
    p = HashedTrigramProvider(dim=16)
    assert np.linalg.norm(p.embed_one(text)) <= 1.0 + 1e-9


def test_invalid_dim_rejected():
    with pytest.raises(ConfigError):
        HashedTrigramProvider(dim=0)


def test_get_provider_factory():
    p = get_provider({"name": "hashedTrigram", "dim": 16})
    assert p.dim == 16
    r = get_provider({"name": "remote", "url": "http://localhost:9", "dim": 8})
    assert isinstance(r, RemoteProvider)
    with pytest.raises(ConfigError):
        get_provider({"name": "mystery"})
    with pytest.raises(ConfigError):
        get_provider({"name": "remote"})  # url required


class _Resp:
    def __init__(self, status_code, payload):
        self.status_code = status_code
        self._payload = payload

    def json(self):
        return self._payload


def test_remote_provider_contract(monkeypatch):
    import httpx

    calls = {}

    def fake_post(url, json=None, timeout=None):
        calls["url"] = url
        calls["body"] = json
        return _Resp(200, {"vectors": [[1.0, 0.0], [0.0, 1.0]]})

    monkeypatch.setattr(httpx, "post", fake_post)
    p = RemoteProvider("http://embed.example", dim=2)
    out = p.embed(["a", "b"])
    assert calls["url"] == "http://embed.example/embed"
    assert calls["body"] == {"texts": ["a", "b"]}
    assert out.shape == (2, 2)


def test_remote_provider_failure_modes(monkeypatch):
    import httpx

    monkeypatch.setattr(httpx, "post", lambda *a, **k: _Resp(503, {}))
    with pytest.raises(ProviderUnavailable):
        RemoteProvider("http://x").embed(["a"])

    monkeypatch.setattr(httpx, "post", lambda *a, **k: _Resp(200, {"wrong": []}))
    with pytest.raises(ProviderUnavailable):
        RemoteProvider("http://x").embed(["a"])

    monkeypatch.setattr(httpx, "post", lambda *a, **k: _Resp(200, {"vectors": [[1.0]]}))
    with pytest.raises(ProviderUnavailable):
        RemoteProvider("http://x").embed(["a", "b"])  # row count mismatch

    def boom(*a, **k):
        raise httpx.ConnectError("refused")

    monkeypatch.setattr(httpx, "post", boom)
    with pytest.raises(ProviderUnavailable):
        RemoteProvider("http://x").embed(["a"])


def test_embed_sentence_helper():
    p = HashedTrigramProvider(dim=16)
    assert embed_sentence(p, "hello world").shape == (16,)
