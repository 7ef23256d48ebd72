"""
Tests for Parallelism Buckets and the Parallelism Histogram.
"""

from collections import Counter

import numpy as np
import pytest

from app.core.exceptions import ConfigError
from mwpar.analyze.buckets import DEFAULT_BUCKETS, bucket_index, parse_buckets
from mwpar.analyze.histogram import histogram_from_bucket_counts, histogram_from_size_counts, parallelism_histogram
from mwpar.synth.generator import language_codes, random_pairs
from tests.conftest import tuple_of


def test_default_buckets():
    """Test the default partition {2}, {3-4}, {5-7}, {8+}."""
    assert [b.label for b in DEFAULT_BUCKETS] == ["2", "3-4", "5-7", "8+"]
    assert [bucket_index(DEFAULT_BUCKETS, s) for s in (2, 3, 4, 5, 7, 8, 90)] == [0, 1, 1, 2, 2, 3, 3]


def test_parse_custom_buckets():
    """Test a custom partition."""
    buckets = parse_buckets("2, 3, 4-9, 10+")

    assert [(b.lo, b.hi) for b in buckets] == [(2, 2), (3, 3), (4, 9), (10, None)]


@pytest.mark.parametrize("spec", [
    "3-4,5+",
    "2,4+",
    "2,3-4",
    "2,3+,5+",
    "2,4-3,5+",
    "2,x,5+",
    "",
])
def test_buckets_must_partition(spec):
    """Test that gaps, overlaps, bounded ends and junk are configuration errors."""
    with pytest.raises(ConfigError):
        parse_buckets(spec)


def test_published_counts_arithmetic():
    """Test the formatter on published tuple and sentence counts (millions)."""
    report = histogram_from_bucket_counts([1368, 573, 177, 70], [2736, 1895, 1004, 745])

    tuple_pct = [row.tuple_pct for row in report.rows]
    sentence_pct = [row.sentence_pct for row in report.rows]
    assert tuple_pct == pytest.approx([62.5, 26.2, 8.1, 3.2], abs=0.05)
    assert sentence_pct == pytest.approx([42.9, 29.7, 15.7, 11.7], abs=0.05)
    assert report.multiway_tuple_pct == pytest.approx(37.5, abs=0.05)
    assert report.total_tuples == 2188
    assert report.total_sentences == 6380


def test_published_counts_tsv():
    """Test the table-shaped TSV rendering."""
    report = histogram_from_bucket_counts([1368, 573, 177, 70], [2736, 1895, 1004, 745]).to_report()

    assert report.to_tsv().splitlines() == [
        "bucket\ttuple_count\ttuple_pct\tsentence_count\tsentence_pct",
        "2\t1368\t62.5\t2736\t42.9",
        "3-4\t573\t26.2\t1895\t29.7",
        "5-7\t177\t8.1\t1004\t15.7",
        "8+\t70\t3.2\t745\t11.7",
    ]


def test_count_length_mismatch():
    """Test that each bucket needs a tuple and a sentence count."""
    with pytest.raises(ConfigError):
        histogram_from_bucket_counts([1, 2], [2, 6])


def test_single_three_way_tuple():
    """Test a corpus of one 3-tuple."""
    report = parallelism_histogram([tuple_of(0, {"en": "hello", "es": "hola", "pt": "olá"})])

    row = report.row("3-4")
    assert (row.tuple_count, row.tuple_pct, row.sentence_count, row.sentence_pct) == (1, 100.0, 3, 100.0)
    assert report.row("2").tuple_count == 0


def test_empty_corpus():
    """Test that an empty corpus reports zeros rather than failing."""
    report = parallelism_histogram([])

    assert report.total_tuples == 0
    assert all(row.tuple_pct == 0.0 for row in report.rows)


def test_size_counts():
    """Test bucketing exact size counts; bucket sentences are size times count."""
    report = histogram_from_size_counts({2: 10, 3: 4, 4: 1, 9: 2})

    assert report.row("3-4").sentence_count == 3 * 4 + 4 * 1
    assert report.row("8+").sentence_count == 18
    assert report.row("2").sentence_count == 2 * report.row("2").tuple_count
    assert report.multiway_tuple_pct == pytest.approx(100.0 * 7 / 17)
    assert report.to_report().summary["size_counts"] == {"2": 10, "3": 4, "4": 1, "9": 2}


@pytest.mark.integration
def test_matches_brute_force_recount(build):
    """Test the histogram of a built corpus against a single-pass recount, for 1 and 3 workers."""
    records = random_pairs(np.random.default_rng(30), 3000, language_codes(12), reuse_rate=0.6)
    corpus = build([r.to_tsv() for r in records]).corpus

    sizes = Counter(t.size for t in corpus)
    for workers in (1, 3):
        report = parallelism_histogram(corpus, workers=workers)
        assert report.size_counts == dict(sorted(sizes.items()))
        assert report.total_tuples == sum(sizes.values())
        assert report.total_sentences == sum(s * n for s, n in sizes.items())
        assert sum(row.tuple_pct for row in report.rows) == pytest.approx(100.0)
        assert report.row("2").sentence_count == 2 * report.row("2").tuple_count


def test_stats_stub_agrees_with_scan(planted_corpus):
    """Test that the build-time histogram equals a scan of the written tuples."""
    scanned = parallelism_histogram(planted_corpus.corpus).to_report().to_dict()

    assert planted_corpus.stats["histogram"] == scanned
