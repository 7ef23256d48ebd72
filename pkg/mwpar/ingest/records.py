"""
Bitext record types.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from mwpar.ingest.textio import printable


class SentenceKey(NamedTuple):
    """Compact identity of a unique sentence within a language."""

    lang: str
    digest: int


@dataclass(frozen=True, slots=True)
class BitextRecord:
    """
    One scored sentence pair, the unit of ingestion.

    Attributes:
        src_lang: Source language code
        tgt_lang: Target language code
        src_text: Source sentence, whitespace-trimmed
        tgt_text: Target sentence, whitespace-trimmed
        margin: Mining margin score
        margin_text: Margin token as it appeared in the input (kept for
            byte-faithful re-serialization, ignored in comparisons)

    Example:
        >>> BitextRecord("en", "es", "hello", "hola", 1.25).to_tsv()
        'en\\tes\\thello\\thola\\t1.25'
    """

    src_lang: str
    tgt_lang: str
    src_text: str
    tgt_text: str
    margin: float
    margin_text: Optional[str] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.src_lang == self.tgt_lang:
            raise ValueError(f"identical languages: {self.src_lang}")
        if not self.src_text or not self.tgt_text:
            raise ValueError("empty text")
        if not math.isfinite(self.margin):
            raise ValueError(f"non-finite margin: {self.margin}")

    @property
    def pair(self) -> tuple[str, str]:
        return (self.src_lang, self.tgt_lang)

    def to_tsv(self) -> str:
        margin = self.margin_text if self.margin_text is not None else repr(self.margin)
        return "\t".join((self.src_lang, self.tgt_lang, self.src_text, self.tgt_text, margin))


@dataclass(slots=True)
class HashedRecord:
    """
    A bitext record with both sentences digested, as carried in run files.
    """

    src_lang: str
    tgt_lang: str
    src_digest: int
    tgt_digest: int
    margin: float
    src_text: str
    tgt_text: str


@dataclass(frozen=True, slots=True)
class RejectRecord:
    """A line that failed to parse, routed to the rejects sink."""

    line_no: int
    reason: str
    raw_line: str

    def to_tsv(self) -> str:
        raw = printable(self.raw_line).replace("\n", " ").replace("\r", " ")
        return f"{self.line_no}\t{self.reason}\t{raw}"
