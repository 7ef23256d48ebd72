"""
Externally supplied score and label tables.

Per-sentence rows are ``lang<TAB>text<TAB>value``; per-pair rows are
``src_lang<TAB>src_text<TAB>tgt_lang<TAB>tgt_text<TAB>value``. Texts are
trimmed and digested the same way the builder digests them, so lookups are
exact matches against corpus members.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence, Union

from app.core.exceptions import DataError
from mwpar.ingest.hashing import hash_sentence
from mwpar.ingest.records import SentenceKey
from mwpar.ingest.textio import PathLike, iter_lines

logger = logging.getLogger(__name__)

ScoreKind = Literal["numeric", "categorical"]
Keying = Literal["sentence", "pair"]
PairKey = tuple[SentenceKey, SentenceKey]
Value = Union[float, str]


@dataclass
class ScoreTable:
    """
    Auxiliary values keyed by sentence or by ordered sentence pair.

    Attributes:
        kind: ``numeric`` (finite floats) or ``categorical`` (labels)
        keying: ``sentence`` or ``pair``
        entries: SentenceKey or (src SentenceKey, tgt SentenceKey) → value
        labels: Declared label set for categorical tables, in display order
        duplicates: Repeated keys skipped while loading (first value wins)
        hash_bits: Digest width of the keys
    """

    kind: ScoreKind
    keying: Keying
    entries: dict = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)
    duplicates: int = 0
    hash_bits: int = 64

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, key, default=None) -> Optional[Value]:
        return self.entries.get(key, default)

    def add(self, key, value: Value) -> bool:
        """Insert a value; returns False (and counts a duplicate) if the key is taken."""
        if key in self.entries:
            self.duplicates += 1
            return False
        self.entries[key] = value
        return True

    def sentence_key(self, lang: str, text: str) -> SentenceKey:
        return SentenceKey(lang, hash_sentence(text.strip(), self.hash_bits))


def _parse_value(raw: str, kind: ScoreKind, labels: Optional[set[str]], where: str) -> Value:
    raw = raw.strip()
    if kind == "categorical":
        if not raw:
            raise DataError(f"{where}: empty label")
        if labels is not None and raw not in labels:
            raise DataError(f"{where}: label {raw!r} is not among the declared labels {sorted(labels)}")
        return raw
    try:
        value = float(raw)
    except ValueError as exc:
        raise DataError(f"{where}: value {raw!r} is not numeric") from exc
    if not math.isfinite(value):
        raise DataError(f"{where}: value {raw!r} is not finite")
    return value


def load_score_table(
    path: PathLike,
    per_pair: bool = False,
    categorical: bool = False,
    labels: Optional[Sequence[str]] = None,
    hash_bits: int = 64,
) -> ScoreTable:
    """
    Load a score table from TSV.

    Args:
        path: Table file (``.gz`` / ``.zst`` accepted)
        per_pair: Rows are sentence pairs rather than single sentences
        categorical: Values are labels rather than numbers
        labels: Declared label set; inferred from the data when omitted
        hash_bits: Digest width, must match the corpus

    Returns:
        ScoreTable

    Raises:
        DataError: On malformed rows, non-finite numbers or undeclared labels
    """
    kind: ScoreKind = "categorical" if categorical else "numeric"
    declared = set(labels) if labels else None
    table = ScoreTable(kind, "pair" if per_pair else "sentence", hash_bits=hash_bits)
    expected = 5 if per_pair else 3

    for line_no, line in enumerate(iter_lines(path, strict=True), start=1):
        if not line.strip():
            continue
        where = f"{path}:{line_no}"
        fields = line.split("\t")
        if len(fields) != expected:
            raise DataError(f"{where}: expected {expected} tab-separated fields, got {len(fields)}")
        value = _parse_value(fields[-1], kind, declared, where)
        if per_pair:
            key = (
                table.sentence_key(fields[0].strip(), fields[1]),
                table.sentence_key(fields[2].strip(), fields[3]),
            )
        else:
            key = table.sentence_key(fields[0].strip(), fields[1])
        table.add(key, value)

    if categorical:
        table.labels = list(labels) if labels else sorted({v for v in table.entries.values()})
    if table.duplicates:
        logger.warning(f"{path}: skipped {table.duplicates} duplicate key(s); first value kept")
    logger.info(f"Loaded {len(table)} {table.kind} {table.keying} scores from {path}")
    return table
