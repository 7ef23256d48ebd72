"""
Tests for Score and Label Tables.
"""

import pytest

from app.core.exceptions import DataError
from mwpar.analyze.scores import load_score_table
from mwpar.ingest.hashing import hash_sentence
from mwpar.ingest.records import SentenceKey
from tests.conftest import write_lines


def test_per_sentence_table(tmp_path):
    """Test loading lang<TAB>text<TAB>value rows keyed by trimmed text."""
    path = write_lines(tmp_path / "scores.tsv", ["en\t hello \t72.5", "es\thola\t80"])

    table = load_score_table(path)

    assert (table.kind, table.keying, len(table)) == ("numeric", "sentence", 2)
    assert table.get(SentenceKey("en", hash_sentence("hello"))) == 72.5
    assert table.get(table.sentence_key("es", "hola")) == 80.0


def test_per_pair_table(tmp_path):
    """Test loading five-field pair rows; the pair is ordered."""
    path = write_lines(tmp_path / "pairs.tsv", ["en\thello\tes\thola\t0.9"])

    table = load_score_table(path, per_pair=True)

    src, tgt = SentenceKey("en", hash_sentence("hello")), SentenceKey("es", hash_sentence("hola"))
    assert table.keying == "pair"
    assert table.get((src, tgt)) == 0.9
    assert table.get((tgt, src)) is None


def test_categorical_labels_inferred(tmp_path):
    """Test that undeclared label sets are inferred and sorted."""
    path = write_lines(tmp_path / "topics.tsv", ["en\ta\tsports", "en\tb\tnews", "en\tc\tsports"])

    table = load_score_table(path, categorical=True)

    assert table.labels == ["news", "sports"]
    assert table.get(table.sentence_key("en", "c")) == "sports"


def test_declared_labels_keep_their_order(tmp_path):
    """Test that declared labels keep the given order, including unused ones."""
    path = write_lines(tmp_path / "topics.tsv", ["en\ta\tsports"])

    table = load_score_table(path, categorical=True, labels=["sports", "news", "music"])

    assert table.labels == ["sports", "news", "music"]


def test_duplicate_keys_keep_first(tmp_path):
    """Test that the first value for a repeated key wins and the repeat is counted."""
    path = write_lines(tmp_path / "scores.tsv", ["en\thello\t1", "en\thello \t2", "", "en\tbye\t3"])

    table = load_score_table(path)

    assert table.get(table.sentence_key("en", "hello")) == 1.0
    assert table.duplicates == 1
    assert len(table) == 2


def test_wide_digests(tmp_path):
    """Test that 128-bit tables key by 128-bit digests."""
    path = write_lines(tmp_path / "scores.tsv", ["en\thello\t1"])

    table = load_score_table(path, hash_bits=128)

    assert SentenceKey("en", hash_sentence("hello", 128)) in table.entries


@pytest.mark.parametrize("line, kwargs", [
    ("en\thello", {}),
    ("en\thello\tes\thola\t1", {}),
    ("en\thello\t1", {"per_pair": True}),
    ("en\thello\thigh", {}),
    ("en\thello\tnan", {}),
    ("en\thello\tinf", {}),
    ("en\thello\t ", {"categorical": True}),
    ("en\thello\tweather", {"categorical": True, "labels": ["sports", "news"]}),
])
def test_malformed_rows(tmp_path, line, kwargs):
    """Test that malformed rows, non-finite numbers and undeclared labels are data errors."""
    path = write_lines(tmp_path / "scores.tsv", [line])

    with pytest.raises(DataError):
        load_score_table(path, **kwargs)


def test_invalid_utf8_row(tmp_path):
    """Test that an undecodable row is a data error naming its line, not a decode crash."""
    path = tmp_path / "scores.tsv"
    path.write_bytes(b"en\thello\t0.5\nes\thol\xe1\t0.7\n")

    with pytest.raises(DataError, match=r"scores.tsv:2: invalid UTF-8"):
        load_score_table(path)
