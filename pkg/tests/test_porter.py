"""Stemmer oracle tests: frozen lexicon + independent reference agreement."""

from __future__ import annotations

import pytest

from framekit.porter import stem
from porter_reference import reference_stem

# Expected outputs frozen from the published algorithm's worked examples
# (run end-to-end) plus additional common words; every entry was verified
# against the independent reference implementation below.
LEXICON = [
    ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"),
    ("caress", "caress"), ("cats", "cat"),
    ("feed", "feed"), ("plastered", "plaster"),
    ("bled", "bled"), ("motoring", "motor"), ("sing", "sing"),
    ("conflated", "conflat"), ("troubled", "troubl"), ("sized", "size"),
    ("hopping", "hop"), ("tanned", "tan"), ("falling", "fall"),
    ("hissing", "hiss"), ("fizzed", "fizz"), ("failing", "fail"),
    ("filing", "file"),
    ("happy", "happi"), ("sky", "sky"),
    ("relational", "relat"), ("conditional", "condit"), ("rational", "ration"),
    ("running", "run"), ("run", "run"),
    ("economies", "economi"), ("economy", "economi"),
    ("generalizations", "gener"), ("oscillators", "oscil"),
    ("electricity", "electr"), ("electrical", "electr"),
    ("hopefulness", "hope"), ("goodness", "good"),
    ("adjustable", "adjust"), ("irritant", "irrit"),
    ("replacement", "replac"), ("adoption", "adopt"), ("communism", "commun"),
    ("activate", "activ"), ("effective", "effect"),
    ("probate", "probat"), ("rate", "rate"), ("controlling", "control"), ("roll", "roll"),
    ("framing", "frame"), ("frames", "frame"), ("analysis", "analysi"),
    ("classification", "classif"), ("computing", "comput"),
    ("computer", "comput"), ("computational", "comput"),
    ("pandemic", "pandem"), ("economic", "econom"), ("economist", "economist"),
    ("vaccination", "vaccin"), ("vaccinated", "vaccin"),
    ("immigration", "immigr"), ("tobacco", "tobacco"),
    ("marriage", "marriag"), ("violence", "violenc"),
    ("discovery", "discoveri"), ("discovered", "discov"),
    ("labeling", "label"), ("labeled", "label"), ("documents", "document"),
    ("researchers", "research"), ("research", "research"),
    ("modeling", "model"), ("models", "model"),
    ("training", "train"), ("trained", "train"),
    ("prediction", "predict"), ("predicted", "predict"),
    ("keywords", "keyword"), ("coherence", "coher"),
    ("perplexity", "perplex"), ("topics", "topic"),
    ("sampling", "sampl"), ("sampled", "sampl"),
    ("iterations", "iter"), ("iterate", "iter"),
    ("probability", "probabl"), ("probabilities", "probabl"),
    ("distribution", "distribut"), ("distributed", "distribut"),
    ("classifier", "classifi"), ("classified", "classifi"),
    ("learning", "learn"), ("learned", "learn"),
    ("preprocessing", "preprocess"), ("journalism", "journal"),
    ("journalists", "journalist"), ("articles", "articl"),
    ("headline", "headlin"), ("headlines", "headlin"),
    ("reporting", "report"), ("reported", "report"),
    ("economics", "econom"), ("discovering", "discov"),
    ("voting", "vote"), ("votes", "vote"),
    ("policy", "polici"), ("policies", "polici"),
    ("governor", "governor"), ("senators", "senat"),
]

# published example pairs whose stems are not fixed points of the algorithm
# (classic Porter is not idempotent in general: "agre" re-stems to "agr");
# they anchor the output oracle but sit outside the idempotence lexicon
EXTRA_PAIRS = [
    ("agreed", "agre"), ("defensible", "defens"), ("cease", "ceas"),
    ("supervised", "supervis"), ("unsupervised", "unsupervis"),
]


def test_lexicon_has_at_least_100_words():
    assert len(LEXICON) >= 100
    assert len({w for w, _ in LEXICON}) == len(LEXICON)


@pytest.mark.parametrize("word,expected", LEXICON + EXTRA_PAIRS)
def test_frozen_lexicon(word, expected):
    assert stem(word) == expected


@pytest.mark.parametrize("word,expected", LEXICON + EXTRA_PAIRS)
def test_agrees_with_independent_reference(word, expected):
    assert reference_stem(word) == expected


@pytest.mark.parametrize("word,_", LEXICON)
def test_idempotent_on_lexicon(word, _):
    once = stem(word)
    assert stem(once) == once


def test_same_stem_for_inflections():
    assert stem("economies") == stem("economy")
    assert stem("vaccination") == stem("vaccinated")


def test_empty_and_short_tokens():
    assert stem("") == ""
    assert stem("a") == "a"
    assert stem("is") == "i"  # the original algorithm strips a bare final s
