"""Deterministic text normalization: raw documents to token-id sequences.

Pipeline per document: lowercase/letter-split tokenization, stopword and
minimum-length filtering, Porter stemming, then corpus-wide vocabulary
pruning by document frequency. Same (corpus, config) always yields the
same TokenizedCorpus.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources

from .corpus_io import Corpus
from .errors import EmptyVocabulary
from .porter import stem

STOPWORDS_RESOURCE = "stopwords_en.txt"
STOPWORDS_SHA256 = "019f104ba2ed07436d05f9cdd3383034ad66014edc27fc651f837e1a038b6451"


def _stopwords_resource():
    return resources.files("framekit").joinpath("resources", STOPWORDS_RESOURCE)


def default_stopwords() -> frozenset[str]:
    """The vendored 179-word English stopword list."""
    return frozenset(_stopwords_resource().read_text("utf-8").split())


def stopwords_resource_sha256() -> str:
    return hashlib.sha256(_stopwords_resource().read_bytes()).hexdigest()


@dataclass(frozen=True)
class PrepConfig:
    """Knobs for the normalization pipeline."""

    min_token_len: int = 2
    stopword_set: frozenset[str] = field(default_factory=default_stopwords)
    stem_enabled: bool = True
    min_doc_freq: int = 2
    max_doc_ratio: float = 0.5

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValueError("min_token_len must be >= 1")
        if not (0 < self.max_doc_ratio <= 1):
            raise ValueError("max_doc_ratio must be in (0, 1]")
        if self.min_doc_freq < 1:
            raise ValueError("min_doc_freq must be >= 1")


@dataclass(frozen=True)
class Vocabulary:
    """Lexicographically ordered term set with dense ids and doc frequencies."""

    terms: tuple[str, ...]
    term_to_id: dict[str, int]
    doc_freq: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for term, df in zip(self.terms, self.doc_freq):
            h.update(term.encode("utf-8"))
            h.update(b"\x00")
            h.update(str(df).encode("ascii"))
            h.update(b"\n")
        return h.hexdigest()


@dataclass(frozen=True)
class TokenizedCorpus:
    """Per-document token-id sequences over a pruned vocabulary."""

    docs: tuple[tuple[int, ...], ...]
    vocabulary: Vocabulary
    empty_doc_ids: tuple[int, ...]

    @property
    def num_docs(self) -> int:
        return len(self.docs)

    @property
    def total_tokens(self) -> int:
        return sum(len(d) for d in self.docs)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on every character that is not a Unicode letter."""
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if ch.isalpha():
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def filter_tokens(tokens: list[str], config: PrepConfig) -> list[str]:
    """Drop stopwords and tokens shorter than the configured minimum."""
    return [
        t for t in tokens
        if len(t) >= config.min_token_len and t not in config.stopword_set
    ]


def prep_tokens(text: str, config: PrepConfig) -> list[str]:
    """Run the full per-document pipeline: tokenize, filter, stem."""
    tokens = filter_tokens(tokenize(text), config)
    if config.stem_enabled:
        tokens = [stem(t) for t in tokens]
    return tokens


def build_tokenized_corpus(corpus: Corpus, config: PrepConfig) -> TokenizedCorpus:
    """Normalize every document and prune the vocabulary by document frequency.

    Terms with doc_freq < min_doc_freq or doc_freq > max_doc_ratio * D are
    dropped; surviving terms get ids in lexicographic order. Documents whose
    token sequence ends up empty are kept (row alignment) and flagged in
    empty_doc_ids.
    """
    token_lists = [prep_tokens(doc.text, config) for doc in corpus.documents]

    df: dict[str, int] = {}
    for tokens in token_lists:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1

    num_docs = len(token_lists)
    max_df = config.max_doc_ratio * num_docs
    kept = sorted(
        term for term, count in df.items()
        if count >= config.min_doc_freq and count <= max_df
    )
    if not kept:
        raise EmptyVocabulary(
            f"no term survived pruning (min_doc_freq={config.min_doc_freq}, "
            f"max_doc_ratio={config.max_doc_ratio}, D={num_docs})"
        )

    term_to_id = {term: i for i, term in enumerate(kept)}
    vocabulary = Vocabulary(
        terms=tuple(kept),
        term_to_id=term_to_id,
        doc_freq=tuple(df[t] for t in kept),
    )

    encoded = tuple(
        tuple(term_to_id[t] for t in tokens if t in term_to_id)
        for tokens in token_lists
    )
    empty = tuple(i for i, doc in enumerate(encoded) if not doc)
    return TokenizedCorpus(docs=encoded, vocabulary=vocabulary, empty_doc_ids=empty)
