from kgforge.textindex.embedding import (
    DEFAULT_DIM,
    EmbeddingProvider,
    HashedTrigramProvider,
    RemoteProvider,
    embed_sentence,
    get_provider,
)
from kgforge.textindex.search import (
    EXACT,
    FORMAT_VERSION,
    MAGIC,
    PREFIX,
    WITHIN_EDIT,
    InvertedIndex,
    SearchHit,
    build_index,
    fuzzy_search,
    levenshtein,
    load_index,
    save_index,
)
from kgforge.textindex.tokenize import TokenizerConfig, graphemes, normalize, tokenize
from kgforge.textindex.vectors import SparseVector, TfIdfModel, cosine, cosine_dense

__all__ = [
    "DEFAULT_DIM",
    "EmbeddingProvider",
    "HashedTrigramProvider",
    "RemoteProvider",
    "embed_sentence",
    "get_provider",
    "EXACT",
    "FORMAT_VERSION",
    "MAGIC",
    "PREFIX",
    "WITHIN_EDIT",
    "InvertedIndex",
    "SearchHit",
    "build_index",
    "fuzzy_search",
    "levenshtein",
    "load_index",
    "save_index",
    "TokenizerConfig",
    "graphemes",
    "normalize",
    "tokenize",
    "SparseVector",
    "TfIdfModel",
    "cosine",
    "cosine_dense",
]
