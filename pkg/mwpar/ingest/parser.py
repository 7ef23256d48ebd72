"""
Scored bitext parsing.

Input lines are ``src_lang<TAB>tgt_lang<TAB>src_text<TAB>tgt_text<TAB>margin``.
Malformed lines never abort a run on their own: they are routed to a rejects
sink with their line number. Only when the reject fraction exceeds the
configured cap does parsing fail.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Optional, Union

from app.core.exceptions import RejectCapExceeded
from mwpar.ingest.records import BitextRecord, RejectRecord
from mwpar.ingest.textio import INPUT_ERRORS, is_valid_utf8

logger = logging.getLogger(__name__)

FIELD_COUNT = 5


@dataclass(frozen=True)
class BitextFormat:
    """
    Input-format descriptor.

    Attributes:
        delimiter: Field separator
        reject_cap: Maximum tolerated fraction of rejected lines
    """

    delimiter: str = "\t"
    reject_cap: float = 0.05


@dataclass
class ParseStats:
    """Line accounting for one parsed stream."""

    lines: int = 0
    parsed: int = 0
    rejected: int = 0
    reasons: Counter = field(default_factory=Counter)

    @property
    def reject_fraction(self) -> float:
        return self.rejected / self.lines if self.lines else 0.0

    def merge(self, other: "ParseStats") -> "ParseStats":
        return ParseStats(
            lines=self.lines + other.lines,
            parsed=self.parsed + other.parsed,
            rejected=self.rejected + other.rejected,
            reasons=self.reasons + other.reasons,
        )

    def to_dict(self) -> dict:
        return {
            "lines": self.lines,
            "parsed": self.parsed,
            "rejected": self.rejected,
            "reasons": dict(sorted(self.reasons.items())),
        }


class RejectSink:
    """
    Collects rejected lines, optionally writing them as TSV
    (``line_no<TAB>reason<TAB>raw_line``).
    """

    def __init__(self, stream: Optional[IO[str]] = None, keep: bool = False):
        self.stream = stream
        self.keep = keep
        self.records: list[RejectRecord] = []

    def add(self, reject: RejectRecord) -> None:
        if self.stream is not None:
            self.stream.write(reject.to_tsv() + "\n")
        if self.keep:
            self.records.append(reject)


def parse_line(line: str, line_no: int, fmt: BitextFormat = BitextFormat()) -> Union[BitextRecord, RejectRecord]:
    """
    Parse one line into a record or a reject.

    Args:
        line: Raw line without its newline
        line_no: 1-based line number, reported with rejects
        fmt: Input-format descriptor

    Returns:
        BitextRecord or RejectRecord
    """
    fields = line.split(fmt.delimiter)
    if len(fields) != FIELD_COUNT:
        return RejectRecord(line_no, f"field_count:{len(fields)}", line)

    src_lang, tgt_lang, src_text, tgt_text, margin_text = fields
    src_lang, tgt_lang = src_lang.strip(), tgt_lang.strip()
    src_text, tgt_text = src_text.strip(), tgt_text.strip()
    margin_text = margin_text.strip()

    if not src_lang or not tgt_lang:
        return RejectRecord(line_no, "empty_language", line)
    if src_lang == tgt_lang:
        return RejectRecord(line_no, "identical_languages", line)
    if not src_text or not tgt_text:
        return RejectRecord(line_no, "empty_text", line)
    try:
        margin = float(margin_text)
    except ValueError:
        return RejectRecord(line_no, "bad_margin", line)
    if not math.isfinite(margin):
        return RejectRecord(line_no, "non_finite_margin", line)

    return BitextRecord(src_lang, tgt_lang, src_text, tgt_text, margin, margin_text=margin_text)


class BitextParser:
    """
    Streaming parser that keeps line accounting across calls.

    Attributes:
        fmt: Input-format descriptor
        rejects: Sink receiving rejected lines
        stats: Accumulated ParseStats
    """

    def __init__(self, fmt: BitextFormat = BitextFormat(), rejects: Optional[RejectSink] = None):
        self.fmt = fmt
        self.rejects = rejects or RejectSink()
        self.stats = ParseStats()

    def parse(self, stream: Iterable[Union[str, bytes]], first_line_no: int = 1) -> Iterator[BitextRecord]:
        """Yield records in stream order; does not enforce the reject cap."""
        stats = self.stats
        for line_no, raw in enumerate(stream, start=first_line_no):
            if isinstance(raw, bytes):
                raw = raw.decode("utf-8", errors=INPUT_ERRORS)
            line = raw.rstrip("\r\n")
            stats.lines += 1
            if is_valid_utf8(line):
                result = parse_line(line, line_no, self.fmt)
            else:
                result = RejectRecord(line_no, "bad_utf8", line)
            if isinstance(result, RejectRecord):
                stats.rejected += 1
                stats.reasons[result.reason.split(":", 1)[0]] += 1
                self.rejects.add(result)
                continue
            stats.parsed += 1
            yield result

    def check_cap(self) -> None:
        """Raise RejectCapExceeded if too many lines were rejected."""
        if self.stats.lines and self.stats.reject_fraction > self.fmt.reject_cap:
            raise RejectCapExceeded(self.stats.rejected, self.stats.lines, self.fmt.reject_cap)
        if self.stats.rejected:
            logger.warning(
                f"Rejected {self.stats.rejected} of {self.stats.lines} lines: {dict(self.stats.reasons)}"
            )


def parse_bitext(
    stream: Iterable[Union[str, bytes]],
    fmt: BitextFormat = BitextFormat(),
    rejects: Optional[RejectSink] = None,
) -> Iterator[BitextRecord]:
    """
    Parse a scored bitext stream.

    Yields one BitextRecord per well-formed line, in stream order. The reject
    cap is enforced once the stream is exhausted.

    Args:
        stream: Lines as str or bytes
        fmt: Input-format descriptor
        rejects: Optional sink for rejected lines

    Yields:
        BitextRecord

    Raises:
        RejectCapExceeded: If the reject fraction exceeds ``fmt.reject_cap``
    """
    parser = BitextParser(fmt, rejects)
    yield from parser.parse(stream)
    parser.check_cap()
