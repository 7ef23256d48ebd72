"""
Tests for the Fraction of Monolingual Data With a Translation.
"""

import math

import pytest

from app.core.exceptions import ConfigError, DataConsistencyError, DataError
from mwpar.analyze.fraction import fraction_report, fraction_with_translation, load_totals, translated_counts
from mwpar.ingest.textio import read_json
from tests.conftest import write_lines


def test_arithmetic():
    """Test 94 translated out of 1000 unique sentences."""
    assert fraction_with_translation({"en": 94}, {"en": 1000}) == {"en": pytest.approx(9.4)}


def test_language_absent_from_corpus():
    """Test that a language with a total but no translations gets 0%."""
    assert fraction_with_translation({"en": 94}, {"en": 1000, "yo": 50}) == {"en": pytest.approx(9.4), "yo": 0.0}


def test_languages_without_totals_are_omitted():
    """Test that only languages with totals are reported, in language order."""
    result = fraction_with_translation({"fr": 175, "en": 94, "de": 3}, {"fr": 1000, "en": 1000})

    assert list(result) == ["en", "fr"]


def test_zero_total():
    """Test that a zero total reports 0% instead of dividing by zero."""
    assert fraction_with_translation({}, {"xx": 0}) == {"xx": 0.0}


def test_total_below_translated_is_reported():
    """Test that contradictory totals raise a data-consistency error with details."""
    with pytest.raises(DataConsistencyError) as exc_info:
        fraction_with_translation({"en": 10}, {"en": 9})

    assert exc_info.value.details == {"lang": "en", "total": 9, "translated": 10}
    assert exc_info.value.exit_code == 2


def test_counts_come_from_the_manifest(three_language_corpus):
    """Test both count modes against the builder's per-language counts."""
    corpus = three_language_corpus.corpus

    assert translated_counts(corpus) == {"en": 1, "es": 1, "pt": 1}
    assert translated_counts(corpus, "after-dedup") == {"en": 1, "es": 1, "pt": 1}
    with pytest.raises(ConfigError):
        translated_counts(corpus, "sometimes")


def test_near_duplicates_count_before_dedup(build):
    """Test that the default numerator includes removed near-duplicates."""
    corpus = build(["en\tes\tHello.\tHola.\t1.4", "en\tes\thello.\tHola.\t1.2"]).corpus

    assert fraction_with_translation(corpus, {"en": 10}) == {"en": pytest.approx(20.0)}
    assert fraction_with_translation(corpus, {"en": 10}, "after-dedup") == {"en": pytest.approx(10.0)}


def test_load_totals(tmp_path):
    """Test reading lang<TAB>count with comments and blank lines."""
    path = write_lines(tmp_path / "totals.tsv", ["# monolingual unique sentences", "en\t1000", "", "fr\t40"])

    assert load_totals(path) == {"en": 1000, "fr": 40}


@pytest.mark.parametrize("lines", [
    ["en 1000"],
    ["en\tmany"],
    ["en\t-3"],
    ["en\t1\textra"],
    ["\t5"],
    ["en\t1", "en\t2"],
])
def test_load_totals_rejects(tmp_path, lines):
    """Test that malformed or repeated lines are data errors."""
    path = write_lines(tmp_path / "totals.tsv", lines)

    with pytest.raises(DataError):
        load_totals(path)


def test_load_totals_invalid_utf8(tmp_path):
    """Test that an undecodable line is a data error naming its line."""
    path = tmp_path / "totals.tsv"
    path.write_bytes(b"en\t10\nf\xffr\t3\n")

    with pytest.raises(DataError, match=r"totals.tsv:2: invalid UTF-8"):
        load_totals(path)


def test_report():
    """Test the report rows."""
    report = fraction_report({"en": 9.4}, {"en": 94}, {"en": 1000}, "with-near-duplicates")

    assert report.to_tsv() == "lang\ttranslated\ttotal\tpct\nen\t94\t1000\t9.4\n"


def test_planted_translation_rate(planted_corpus, planted_dir):
    """Test recovery of the planted translation rate from the generated totals."""
    truth = read_json(planted_dir / "ground_truth.json")
    totals = load_totals(planted_dir / "monolingual_totals.tsv")
    rate = truth["translation_rate"]

    fractions = fraction_with_translation(planted_corpus.corpus, totals)
    translated = translated_counts(planted_corpus.corpus)

    assert totals == truth["monolingual_totals"]
    for lang, pct in fractions.items():
        assert pct == pytest.approx(100.0 * translated[lang] / totals[lang])
    n = sum(translated.values())
    pooled = n / sum(totals.values())
    assert abs(pooled - rate) < 4 * rate * math.sqrt((1 - rate) / n)
