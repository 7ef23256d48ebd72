"""
Tests for the Planted Corpus Generator.
"""

import numpy as np
import pytest

from app.core.exceptions import ConfigError
from mwpar.analyze.histogram import parallelism_histogram
from mwpar.ingest.textio import read_json
from mwpar.synth.generator import generate, language_codes, make_synth_config, parse_sizes, random_pairs


def test_same_seed_same_output():
    """Test that generation is a pure function of the configuration."""
    config = make_synth_config(seed=3, tuples=50, languages=6, sizes="2:0.5,3:0.3,6:0.2", random_pairs=20)

    first, second = generate(config), generate(config)
    other = generate(config.model_copy(update={"seed": 4}))

    assert first.lines == second.lines
    assert first.truth == second.truth
    assert first.random_lines == second.random_lines
    assert first.lines != other.lines


def test_truth_is_self_consistent():
    """Test that planted counts add up."""
    planted = generate(make_synth_config(seed=1, tuples=200, languages=6, sizes="2:0.5,3:0.3,5:0.2"))
    truth = planted.truth
    counts = truth["counts"]

    assert sum(truth["size_counts"].values()) == 200
    assert counts["sentences_out"] == sum(int(s) * n for s, n in truth["size_counts"].items())
    assert counts["lines_read"] == len(planted.lines) == counts["pairs_in"] + counts["lines_rejected"]
    assert len(truth["corrupt_lines"]) == counts["lines_rejected"]
    assert sum(v["sentences"] for v in truth["languages"].values()) == counts["sentences_out"]
    assert counts["pairs_in"] == counts["pairs_new_row"] + counts["pairs_joined"] + counts["pairs_discarded"]


def test_no_tuples():
    """Test that an empty plant gives no lines."""
    planted = generate(make_synth_config(tuples=0))

    assert planted.lines == []
    assert planted.truth["counts"]["tuples_out"] == 0


def test_parse_sizes():
    """Test that weights are normalized and sizes sorted."""
    assert parse_sizes("3:1,2:3") == {2: 0.75, 3: 0.25}


@pytest.mark.parametrize("values", [
    {"sizes": "1:1"},
    {"sizes": "2:0"},
    {"sizes": "2-1"},
    {"sizes": "9:1", "languages": 4},
    {"tuples": -1},
    {"translation_rate": 0},
    {"colour": "blue"},
])
def test_bad_config(values):
    """Test that invalid generator parameters are configuration errors."""
    with pytest.raises(ConfigError):
        make_synth_config(**values)


def test_language_codes():
    """Test that codes extend past the named list."""
    codes = language_codes(30)

    assert codes[:3] == ["en", "de", "fr"]
    assert len(set(codes)) == 30


def test_random_pairs():
    """Test random pairs use distinct languages and reuse earlier sentences."""
    records = random_pairs(np.random.default_rng(0), 500, language_codes(5), reuse_rate=0.9)

    assert len(records) == 500
    assert all(r.src_lang != r.tgt_lang for r in records)
    texts = [(r.src_lang, r.src_text) for r in records] + [(r.tgt_lang, r.tgt_text) for r in records]
    assert len(set(texts)) < len(texts)


@pytest.mark.integration
def test_build_recovers_planted_counts(planted_corpus, planted_dir):
    """Test that the builder reproduces every planted count."""
    truth = read_json(planted_dir / "ground_truth.json")
    counts = planted_corpus.manifest["counts"]

    for key, expected in truth["counts"].items():
        assert counts[key] == expected, key


@pytest.mark.integration
def test_histogram_recovers_planted_sizes(planted_corpus, planted_dir):
    """Test that the exact tuple-size counts are recovered."""
    truth = read_json(planted_dir / "ground_truth.json")

    report = parallelism_histogram(planted_corpus.corpus)

    assert {str(s): n for s, n in report.size_counts.items()} == truth["size_counts"]


@pytest.mark.integration
def test_near_duplicate_counts_per_language(planted_corpus, planted_dir):
    """Test per-language counts before and after near-duplicate removal."""
    truth = read_json(planted_dir / "ground_truth.json")["languages"]

    before = planted_corpus.corpus.unique_sentences("unique_before_dedup")
    after = planted_corpus.corpus.unique_sentences("unique_after_dedup")

    for lang, planted in truth.items():
        assert before[lang] == planted["unique_before_dedup"]
        assert after[lang] == planted["sentences"]
