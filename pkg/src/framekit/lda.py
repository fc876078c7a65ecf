"""Topic discovery via collapsed Gibbs sampling, with quality metrics.

Training is fully deterministic: the seed fixes token-topic initialization
and every sampling draw, documents are visited in id order and tokens in
position order, and point estimates are taken from the final count state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._gibbs import gibbs_train
from .errors import (
    AllDocumentsEmpty,
    DimensionMismatch,
    EmptyVocabulary,
    KeywordCountExceedsVocabulary,
    TermNotInVocabulary,
)
from .rng import splitmix64_state
from .textprep import TokenizedCorpus, Vocabulary

TRACE_INTERVAL = 50  # iterations between log-likelihood checkpoints


@dataclass(frozen=True)
class LdaConfig:
    """Sampler configuration; alpha defaults to 50/K when left unset."""

    num_topics: int
    seed: int = 42
    iterations: int = 1000
    alpha: float | None = None
    beta: float = 0.01
    keyword_count: int = 10

    def __post_init__(self):
        if self.num_topics < 2:
            raise ValueError("num_topics must be >= 2")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.keyword_count < 1:
            raise ValueError("keyword_count must be >= 1")

    @property
    def effective_alpha(self) -> float:
        return self.alpha if self.alpha is not None else 50.0 / self.num_topics


@dataclass(frozen=True, eq=False)
class TopicModel:
    """Trained sampler state with smoothed point estimates."""

    config: LdaConfig
    vocabulary: Vocabulary
    phi: np.ndarray            # K x V, row-stochastic
    theta: np.ndarray          # D x K, row-stochastic
    topic_word_counts: np.ndarray
    doc_topic_counts: np.ndarray
    token_topics: np.ndarray   # final assignment per token, stream order
    log_likelihood_trace: tuple[float, ...]

    @property
    def num_topics(self) -> int:
        return self.phi.shape[0]

    @property
    def num_docs(self) -> int:
        return self.theta.shape[0]


@dataclass(frozen=True)
class TopicSummary:
    topic_id: int
    keywords: tuple[str, ...]
    keyword_probs: tuple[float, ...]
    coherence: float


@dataclass(frozen=True)
class SweepRow:
    num_topics: int
    mean_coherence: float
    perplexity: float


def _token_stream(tc: TokenizedCorpus) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    words: list[int] = []
    doc_ids: list[int] = []
    for d, doc in enumerate(tc.docs):
        words.extend(doc)
        doc_ids.extend([d] * len(doc))
    doc_lens = np.array([len(doc) for doc in tc.docs], dtype=np.int64)
    return (np.array(words, dtype=np.int32),
            np.array(doc_ids, dtype=np.int32),
            doc_lens)


def _checkpoints(iterations: int) -> np.ndarray:
    points = [0] + list(range(TRACE_INTERVAL, iterations + 1, TRACE_INTERVAL))
    if points[-1] != iterations:
        points.append(iterations)
    return np.array(points, dtype=np.int64)


def train_lda(tc: TokenizedCorpus, config: LdaConfig) -> TopicModel:
    """Train a topic model; identical inputs yield bit-identical models."""
    vocab_size = len(tc.vocabulary)
    if vocab_size == 0:
        raise EmptyVocabulary("tokenized corpus has an empty vocabulary")
    words, doc_ids, doc_lens = _token_stream(tc)
    if words.shape[0] == 0:
        raise AllDocumentsEmpty("every document is empty after preprocessing")

    k = config.num_topics
    alpha = config.effective_alpha
    beta = config.beta
    state = splitmix64_state(config.seed)
    z, doc_topic, topic_word, topic_counts, trace = gibbs_train(
        words, doc_ids, doc_lens, k, vocab_size, alpha, beta,
        config.iterations, state, _checkpoints(config.iterations),
    )

    phi = (topic_word + beta) / (topic_counts[:, None] + vocab_size * beta)
    theta = np.empty((len(tc.docs), k), dtype=np.float64)
    nonzero = doc_lens > 0
    theta[nonzero] = (doc_topic[nonzero] + alpha) \
        / (doc_lens[nonzero, None] + k * alpha)
    theta[~nonzero] = 1.0 / k

    return TopicModel(
        config=config,
        vocabulary=tc.vocabulary,
        phi=phi,
        theta=theta,
        topic_word_counts=topic_word,
        doc_topic_counts=doc_topic,
        token_topics=z,
        log_likelihood_trace=tuple(float(v) for v in trace),
    )


def topic_keywords(model: TopicModel, n: int, tc: TokenizedCorpus) -> list[TopicSummary]:
    """Top-n terms per topic by phi, ties broken lexicographically."""
    vocab_size = model.phi.shape[1]
    if n < 1:
        raise ValueError("keyword count must be >= 1")
    if n > vocab_size:
        raise KeywordCountExceedsVocabulary(
            f"requested {n} keywords but vocabulary has {vocab_size} terms"
        )
    terms = model.vocabulary.terms
    summaries = []
    for topic_id in range(model.phi.shape[0]):
        row = model.phi[topic_id]
        order = sorted(range(vocab_size), key=lambda w: (-row[w], terms[w]))
        top = order[:n]
        keywords = tuple(terms[w] for w in top)
        summaries.append(TopicSummary(
            topic_id=topic_id,
            keywords=keywords,
            keyword_probs=tuple(float(row[w]) for w in top),
            coherence=coherence(list(keywords), tc),
        ))
    return summaries


def _term_doc_sets(tc: TokenizedCorpus) -> list[set[int]]:
    sets: list[set[int]] = [set() for _ in range(len(tc.vocabulary))]
    for d, doc in enumerate(tc.docs):
        for w in set(doc):
            sets[w].add(d)
    return sets


def coherence(topic_terms: list[str], tc: TokenizedCorpus) -> float:
    """UMass coherence over ordered term pairs, natural log, +1 smoothing."""
    if len(topic_terms) < 2:
        raise ValueError("coherence needs at least two terms")
    ids = []
    for term in topic_terms:
        if term not in tc.vocabulary.term_to_id:
            raise TermNotInVocabulary(f"term {term!r} not in vocabulary")
        ids.append(tc.vocabulary.term_to_id[term])
    doc_sets = _term_doc_sets(tc)
    score = 0.0
    for i in range(1, len(ids)):
        for j in range(i):
            cooc = len(doc_sets[ids[i]] & doc_sets[ids[j]])
            score += math.log((cooc + 1) / len(doc_sets[ids[j]]))
    return score


def perplexity(model: TopicModel, tc: TokenizedCorpus) -> float:
    """exp(-L/N) over the corpus under the model's point estimates."""
    if model.theta.shape[0] != tc.num_docs:
        raise DimensionMismatch("model and corpus document counts differ")
    if model.phi.shape[1] != len(tc.vocabulary):
        raise DimensionMismatch("model and corpus vocabulary sizes differ")
    log_lik = 0.0
    n_tokens = 0
    for d, doc in enumerate(tc.docs):
        for w in doc:
            p = float(model.theta[d] @ model.phi[:, w])
            log_lik += math.log(p)
            n_tokens += 1
    if n_tokens == 0:
        raise AllDocumentsEmpty("corpus has no tokens")
    return math.exp(-log_lik / n_tokens)


def sweep_topic_count(tc: TokenizedCorpus, k_values: list[int],
                      base: LdaConfig) -> list[SweepRow]:
    """Train one model per K (same seed) and tabulate quality metrics."""
    rows = []
    for k in sorted(k_values):
        config = replace(base, num_topics=k,
                         alpha=base.alpha)  # None re-resolves to 50/K
        model = train_lda(tc, config)
        summaries = topic_keywords(model, config.keyword_count, tc)
        mean_coh = sum(s.coherence for s in summaries) / len(summaries)
        rows.append(SweepRow(
            num_topics=k,
            mean_coherence=mean_coh,
            perplexity=perplexity(model, tc),
        ))
    return rows
