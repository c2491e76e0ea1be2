"""Runtime configuration: one TOML file, overridable per key through
KGF_* environment variables. All tunables the pipeline leaves open live
here: thresholds, feedback mode, tokenizer, embedding provider, paths."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from kgforge.errors import ConfigError
from kgforge.textindex.tokenize import TokenizerConfig


@dataclass(frozen=True)
class Config:
    alpha: float = 0.1
    feedback_mode: str = "signed"
    tau_map: float = 0.5
    tau_nil: float = 0.2
    theta: float = 0.8
    theta_topic: float = 0.15
    topic_mode: str = "firstOccurrence"
    tokenizer_mode: str = "character"
    ngram_n: int = 2
    lowercase: bool = True
    search_k: int = 5
    max_edit: int = 1
    embedding: dict = field(default_factory=lambda: {"name": "hashedTrigram", "dim": 256})
    graph_nt: str = "graph.nt"
    graph_meta: str = "graph.meta.json"
    index_path: str = "index.bin"
    sessions_dir: str = "sessions"
    host: str = "127.0.0.1"
    port: int = 8040

    def tokenizer(self) -> TokenizerConfig:
        return TokenizerConfig(mode=self.tokenizer_mode, n=self.ngram_n, lowercase=self.lowercase)

    def validate(self) -> "Config":
        for name in ("tau_map", "tau_nil", "theta", "theta_topic"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        if self.alpha < 0:
            raise ConfigError(f"alpha must be >= 0, got {self.alpha}")
        if self.feedback_mode not in ("signed", "literal"):
            raise ConfigError(f"unknown feedback mode {self.feedback_mode!r}")
        if self.topic_mode not in ("literal", "firstOccurrence"):
            raise ConfigError(f"unknown topic mode {self.topic_mode!r}")
        if self.search_k < 1 or self.max_edit < 0:
            raise ConfigError("search_k must be >= 1 and max_edit >= 0")
        return self


_SCALAR_ENV = {
    "KGF_ALPHA": ("alpha", float),
    "KGF_FEEDBACK_MODE": ("feedback_mode", str),
    "KGF_TAU_MAP": ("tau_map", float),
    "KGF_TAU_NIL": ("tau_nil", float),
    "KGF_THETA": ("theta", float),
    "KGF_THETA_TOPIC": ("theta_topic", float),
    "KGF_TOPIC_MODE": ("topic_mode", str),
    "KGF_TOKENIZER_MODE": ("tokenizer_mode", str),
    "KGF_NGRAM_N": ("ngram_n", int),
    "KGF_LOWERCASE": ("lowercase", lambda v: v.lower() in ("1", "true", "yes")),
    "KGF_SEARCH_K": ("search_k", int),
    "KGF_MAX_EDIT": ("max_edit", int),
    "KGF_GRAPH_NT": ("graph_nt", str),
    "KGF_GRAPH_META": ("graph_meta", str),
    "KGF_INDEX": ("index_path", str),
    "KGF_SESSIONS": ("sessions_dir", str),
    "KGF_HOST": ("host", str),
    "KGF_PORT": ("port", int),
}


def _from_toml(data: dict) -> dict:
    fields: dict = {}
    scoring = data.get("scoring", {})
    for key in ("alpha", "feedback_mode", "tau_map", "tau_nil", "theta", "theta_topic", "topic_mode"):
        if key in scoring:
            fields[key] = scoring[key]
    tok = data.get("tokenizer", {})
    if "mode" in tok:
        fields["tokenizer_mode"] = tok["mode"]
    if "ngram_n" in tok:
        fields["ngram_n"] = tok["ngram_n"]
    if "lowercase" in tok:
        fields["lowercase"] = tok["lowercase"]
    search = data.get("search", {})
    if "k" in search:
        fields["search_k"] = search["k"]
    if "max_edit" in search:
        fields["max_edit"] = search["max_edit"]
    if "embedding" in data:
        fields["embedding"] = dict(data["embedding"])
    paths = data.get("paths", {})
    for toml_key, attr in (
        ("graph_nt", "graph_nt"),
        ("graph_meta", "graph_meta"),
        ("index", "index_path"),
        ("sessions", "sessions_dir"),
    ):
        if toml_key in paths:
            fields[attr] = paths[toml_key]
    serve = data.get("serve", {})
    if "host" in serve:
        fields["host"] = serve["host"]
    if "port" in serve:
        fields["port"] = serve["port"]
    return fields


def load_config(path: "str | Path | None" = None, env: dict | None = None) -> Config:
    """File values, then environment overrides, then validation."""
    fields: dict = {}
    if path is not None:
        try:
            data = tomllib.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        fields = _from_toml(data)
    cfg = Config(**fields)

    env = env if env is not None else dict(os.environ)
    overrides: dict = {}
    for var, (attr, cast) in _SCALAR_ENV.items():
        if var in env:
            try:
                overrides[attr] = cast(env[var])
            except ValueError as exc:
                raise ConfigError(f"bad value for {var}: {env[var]!r}") from exc
    embedding = dict(cfg.embedding)
    if "KGF_EMBEDDING_NAME" in env:
        embedding["name"] = env["KGF_EMBEDDING_NAME"]
    if "KGF_EMBEDDING_DIM" in env:
        embedding["dim"] = int(env["KGF_EMBEDDING_DIM"])
    if "KGF_EMBEDDING_URL" in env:
        embedding["url"] = env["KGF_EMBEDDING_URL"]
    if embedding != cfg.embedding:
        overrides["embedding"] = embedding
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg.validate()
