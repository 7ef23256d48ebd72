"""
Tests for Scored Bitext Parsing.

This module tests line parsing, the rejects sink, line accounting and the
reject cap.
"""

import io

import pytest

from app.core.exceptions import RejectCapExceeded
from mwpar.ingest.parser import BitextFormat, BitextParser, RejectSink, parse_bitext, parse_line
from mwpar.ingest.records import BitextRecord, RejectRecord
from mwpar.synth.generator import generate, make_synth_config


def test_parse_well_formed_line():
    """Test direct field mapping of a well-formed line."""
    record = parse_line("en\tes\thello\thola\t1.25", 1)

    assert record == BitextRecord("en", "es", "hello", "hola", 1.25)


def test_parse_trims_text_fields():
    """Test that leading and trailing whitespace is trimmed uniformly."""
    record = parse_line("en\tes\t  hello \t hola  \t 1.25", 1)

    assert record.src_text == "hello"
    assert record.tgt_text == "hola"
    assert record.margin == 1.25


@pytest.mark.parametrize("line, reason", [
    ("en\ten\ta\tb\t1.1", "identical_languages"),
    ("en\tes\thello\thola", "field_count:4"),
    ("en\tes\thello\thola\t1.2\textra", "field_count:6"),
    ("en\tes\t   \thola\t1.2", "empty_text"),
    ("\tes\thello\thola\t1.2", "empty_language"),
    ("en\tes\thello\thola\tn/a", "bad_margin"),
    ("en\tes\thello\thola\tnan", "non_finite_margin"),
    ("en\tes\thello\thola\tinf", "non_finite_margin"),
])
def test_parse_rejects(line, reason):
    """Test that malformed lines become reject records with their reason."""
    result = parse_line(line, 7)

    assert isinstance(result, RejectRecord)
    assert result.reason == reason
    assert result.line_no == 7
    assert result.raw_line == line


def test_reject_record_tsv():
    """Test the rejects sink line format."""
    reject = RejectRecord(3, "bad_margin", "en\tes\ta\tb\tx")

    assert reject.to_tsv() == "3\tbad_margin\ten\tes\ta\tb\tx"


def test_reserialization_is_byte_identical():
    """Test that a well-formed line re-serializes to itself."""
    line = "en\tde\tGood morning.\tGuten Morgen.\t1.2340"

    assert parse_line(line, 1).to_tsv() == line


def test_parser_keeps_stream_order_and_counts():
    """Test that records are yielded in order and rejects are counted by reason."""
    lines = [
        "en\tes\thello\thola\t1.2\n",
        b"en\ten\tx\ty\t1.1\n",
        "en\tpt\thello\tol\xe1\t1.1\r\n",
        "garbage\n",
    ]
    sink = RejectSink(keep=True)
    parser = BitextParser(rejects=sink)

    records = list(parser.parse(lines, first_line_no=10))

    assert [r.tgt_lang for r in records] == ["es", "pt"]
    assert records[1].tgt_text == "olá"
    assert [r.line_no for r in sink.records] == [11, 13]
    assert parser.stats.lines == 4
    assert parser.stats.parsed == 2
    assert parser.stats.rejected == 2
    assert parser.stats.to_dict()["reasons"] == {"field_count": 1, "identical_languages": 1}


def test_invalid_utf8_is_rejected_not_replaced():
    """Test that lines with invalid UTF-8, as bytes or as escaped text, go to the rejects sink."""
    lines = [
        b"en\tes\tcaf\xff\tcaf\xc3\xa9\t1.2\n",
        "en\tes\tcaf\udcff\tcafé\t1.2",
        "en\tes\tcafé\tcafé\t1.2",
    ]
    sink = RejectSink(keep=True)
    parser = BitextParser(rejects=sink)

    records = list(parser.parse(lines))

    assert [r.src_text for r in records] == ["café"]
    assert [(r.line_no, r.reason) for r in sink.records] == [(1, "bad_utf8"), (2, "bad_utf8")]
    assert sink.records[0].to_tsv() == "1\tbad_utf8\ten\tes\tcaf\\xff\tcafé\t1.2"
    assert parser.stats.to_dict()["reasons"] == {"bad_utf8": 2}


def test_rejects_are_written_to_stream():
    """Test that the sink writes line_no<TAB>reason<TAB>raw_line."""
    stream = io.StringIO()
    list(parse_bitext(["en\tes\ta\tb\t1.0", "en\tes\ta\tb\tx"] * 20, BitextFormat(reject_cap=0.5), RejectSink(stream)))

    first = stream.getvalue().splitlines()[0]
    assert first == "2\tbad_margin\ten\tes\ta\tb\tx"


def test_reject_cap_exceeded():
    """Test that parsing fails once the reject fraction exceeds the cap."""
    lines = ["en\tes\ta\tb\t1.0"] * 9 + ["broken"]

    with pytest.raises(RejectCapExceeded) as exc_info:
        list(parse_bitext(lines, BitextFormat(reject_cap=0.05)))

    assert exc_info.value.rejected == 1
    assert exc_info.value.total == 10
    assert exc_info.value.exit_code == 2


def test_reject_cap_not_exceeded():
    """Test that a reject fraction at the cap is tolerated."""
    lines = ["en\tes\ta\tb\t1.0"] * 19 + ["broken"]

    records = list(parse_bitext(lines, BitextFormat(reject_cap=0.05)))

    assert len(records) == 19


def test_planted_corruption_is_rejected_exactly():
    """Test that exactly the planted corrupt lines are rejected."""
    config = make_synth_config(seed=5, tuples=3000, languages=10, sizes="2:0.7,3:0.3", corrupt_rate=0.02)
    planted = generate(config)
    sink = RejectSink(keep=True)
    parser = BitextParser(rejects=sink)

    parsed = sum(1 for _ in parser.parse(planted.lines))

    assert [r.line_no for r in sink.records] == planted.truth["corrupt_lines"]
    assert parsed == planted.truth["counts"]["pairs_in"]
    assert parser.stats.lines == len(planted.lines)
