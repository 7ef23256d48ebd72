"""
Tests for Per-Language Parallelism Profiles.
"""

from collections import Counter, defaultdict

import numpy as np
import pytest

from app.core.exceptions import ConfigError
from mwpar.analyze.languages import LanguageStats, language_report, per_language_stats, resource_group_mean
from mwpar.ingest.textio import read_json
from mwpar.synth.generator import language_codes, random_pairs
from tests.conftest import tuple_of


@pytest.fixture
def pair_and_triple():
    """An {en, es} pair and an {en, fr, de} triple."""
    return [
        tuple_of(0, {"en": "good night", "es": "buenas noches"}),
        tuple_of(1, {"en": "thank you", "fr": "merci", "de": "danke"}),
    ]


def test_hand_computed_means(pair_and_triple):
    """Test per-language counts and means on a hand-computable corpus."""
    stats = {s.lang: s for s in per_language_stats(pair_and_triple)}

    assert stats["en"].unique_sentences == 2
    assert stats["en"].mean_parallelism == 2.5
    assert stats["en"].histogram == {2: 1, 3: 1}
    assert stats["es"].mean_parallelism == 2.0
    assert stats["fr"].mean_parallelism == 3.0
    assert stats["de"].mean_parallelism == 3.0


def test_ordering(pair_and_triple):
    """Test descending unique sentences, ties broken by language code."""
    assert [s.lang for s in per_language_stats(pair_and_triple)] == ["en", "de", "es", "fr"]


def test_single_pair():
    """Test that both languages of a single pair have mean exactly 2."""
    stats = per_language_stats([tuple_of(0, {"en": "yes", "de": "ja"})])

    assert [s.mean_parallelism for s in stats] == [2.0, 2.0]


def test_resource_group_means():
    """Test unweighted top-k and bottom-k means."""
    stats = [
        LanguageStats("en", 100, 4.0, {}),
        LanguageStats("de", 80, 3.0, {}),
        LanguageStats("sw", 5, 6.0, {}),
        LanguageStats("yo", 2, 8.0, {}),
    ]

    assert resource_group_mean(stats, 2, highest=True) == 3.5
    assert resource_group_mean(stats, 2, highest=False) == 7.0
    assert resource_group_mean(stats, 10) == pytest.approx(5.25)


def test_resource_group_needs_positive_k():
    """Test that k must be positive."""
    with pytest.raises(ConfigError):
        resource_group_mean([], 0)


def test_language_report(pair_and_triple):
    """Test the report table and summary."""
    report = language_report(per_language_stats(pair_and_triple), top_k=1)

    assert report.to_tsv().splitlines()[:2] == ["lang\tunique_sentences\tmean_parallelism", "en\t2\t2.50"]
    assert report.summary["sentences"] == 5
    assert report.summary["top_k_mean_parallelism"] == 2.5
    assert report.summary["bottom_k_mean_parallelism"] == 3.0


@pytest.mark.integration
def test_matches_brute_force(build):
    """Test fuzzed means against a recount, and that sentences sum to the corpus total."""
    records = random_pairs(np.random.default_rng(31), 2500, language_codes(10), reuse_rate=0.6)
    corpus = build([r.to_tsv() for r in records]).corpus

    sizes: dict[str, list[int]] = defaultdict(list)
    for t in corpus:
        for lang in t.members:
            sizes[lang].append(t.size)

    for workers in (1, 2):
        stats = per_language_stats(corpus, workers=workers)
        assert {s.lang: s.unique_sentences for s in stats} == {lang: len(v) for lang, v in sizes.items()}
        for s in stats:
            assert s.mean_parallelism == pytest.approx(sum(sizes[s.lang]) / len(sizes[s.lang]))
            assert s.histogram == dict(sorted(Counter(sizes[s.lang]).items()))
            assert s.mean_parallelism >= 2
        assert sum(s.unique_sentences for s in stats) == corpus.counts()["sentences_out"]


def test_planted_means(planted_corpus, planted_dir):
    """Test that planted per-language means are recovered exactly."""
    truth = read_json(planted_dir / "ground_truth.json")["languages"]
    stats = {s.lang: s for s in per_language_stats(planted_corpus.corpus)}

    assert set(stats) == set(truth)
    for lang, planted in truth.items():
        assert stats[lang].unique_sentences == planted["sentences"]
        assert stats[lang].mean_parallelism == pytest.approx(planted["mean_parallelism"])
