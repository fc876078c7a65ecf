"""Collapsed Gibbs sampling kernel, JIT-compiled with numba.

The kernel carries an inline xoshiro256** generator that consumes state
word-for-word identically to rng.Xoshiro256StarStar (asserted in tests), so
a trained model is a pure function of (token stream, config, seed).
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U5 = np.uint64(5)
_U7 = np.uint64(7)
_U9 = np.uint64(9)
_U11 = np.uint64(11)
_U17 = np.uint64(17)
_U19 = np.uint64(19)
_U45 = np.uint64(45)
_U57 = np.uint64(57)
_TWO_NEG53 = 2.0 ** -53


@njit(inline="always")
def _next_u64(s):
    x = s[1] * _U5
    result = ((x << _U7) | (x >> _U57)) * _U9
    t = s[1] << _U17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = (s[3] << _U45) | (s[3] >> _U19)
    return result


@njit(inline="always")
def _next_float(s):
    return (_next_u64(s) >> _U11) * _TWO_NEG53


@njit(cache=True)
def rng_next_floats(state, n):
    """Draw n uniforms; test hook for cross-checking the pure-Python RNG."""
    out = np.empty(n, np.float64)
    for i in range(n):
        out[i] = _next_float(state)
    return out


@njit(cache=True)
def _log_likelihood(words, doc_ids, doc_lens, doc_topic, topic_word,
                    topic_counts, alpha, beta):
    k_topics = doc_topic.shape[1]
    vbeta = topic_word.shape[1] * beta
    kalpha = k_topics * alpha
    total = 0.0
    for i in range(words.shape[0]):
        d = doc_ids[i]
        w = words[i]
        p = 0.0
        for k in range(k_topics):
            theta = (doc_topic[d, k] + alpha) / (doc_lens[d] + kalpha)
            phi = (topic_word[k, w] + beta) / (topic_counts[k] + vbeta)
            p += theta * phi
        total += np.log(p)
    return total


@njit(cache=True)
def gibbs_train(words, doc_ids, doc_lens, k_topics, vocab_size, alpha, beta,
                iterations, rng_state, checkpoints):
    """Run collapsed Gibbs sampling over a flat token stream.

    words[i] / doc_ids[i] follow document-id order then token-position
    order; that ordering fixes both RNG consumption and sweep order.
    Returns (z, doc_topic, topic_word, topic_counts, trace).
    """
    n_tokens = words.shape[0]
    n_docs = doc_lens.shape[0]
    doc_topic = np.zeros((n_docs, k_topics), np.int64)
    topic_word = np.zeros((k_topics, vocab_size), np.int64)
    topic_counts = np.zeros(k_topics, np.int64)
    z = np.empty(n_tokens, np.int32)

    for i in range(n_tokens):
        k = int(_next_float(rng_state) * k_topics)
        if k >= k_topics:
            k = k_topics - 1
        z[i] = k
        doc_topic[doc_ids[i], k] += 1
        topic_word[k, words[i]] += 1
        topic_counts[k] += 1

    trace = np.zeros(checkpoints.shape[0], np.float64)
    ci = 0
    if ci < checkpoints.shape[0] and checkpoints[ci] == 0:
        trace[ci] = _log_likelihood(words, doc_ids, doc_lens, doc_topic,
                                    topic_word, topic_counts, alpha, beta)
        ci += 1

    vbeta = vocab_size * beta
    weights = np.empty(k_topics, np.float64)
    for it in range(1, iterations + 1):
        for i in range(n_tokens):
            d = doc_ids[i]
            w = words[i]
            k_old = z[i]
            doc_topic[d, k_old] -= 1
            topic_word[k_old, w] -= 1
            topic_counts[k_old] -= 1

            total = 0.0
            for k in range(k_topics):
                wt = (doc_topic[d, k] + alpha) * (topic_word[k, w] + beta) \
                    / (topic_counts[k] + vbeta)
                weights[k] = wt
                total += wt

            u = _next_float(rng_state) * total
            k_new = k_topics - 1
            acc = 0.0
            for k in range(k_topics):
                acc += weights[k]
                if u < acc:
                    k_new = k
                    break

            z[i] = k_new
            doc_topic[d, k_new] += 1
            topic_word[k_new, w] += 1
            topic_counts[k_new] += 1

        if ci < checkpoints.shape[0] and checkpoints[ci] == it:
            trace[ci] = _log_likelihood(words, doc_ids, doc_lens, doc_topic,
                                        topic_word, topic_counts, alpha, beta)
            ci += 1

    return z, doc_topic, topic_word, topic_counts, trace
