"""
Inversion of the tuple table with near-duplicate removal.

For every (language, row) exactly one sentence survives: the one with the
highest score, ties going to the earliest insertion. Since the merge pass
consumes records by descending score, this is also the first sentence added
to the row in that language.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from mwpar.builder.table import TupleTable
from mwpar.ingest.hashing import join_digest

logger = logging.getLogger(__name__)


@dataclass
class LanguageRows:
    """
    Surviving members of one language, ascending by row id.

    Attributes:
        lang: Language code
        row: Row ids (unique, ascending)
        digest_hi: High digest words
        digest_lo: Low digest words
        score: Member scores
        entries: Table entries before dedup
    """

    lang: str
    row: np.ndarray
    digest_hi: np.ndarray
    digest_lo: np.ndarray
    score: np.ndarray
    entries: int

    @property
    def survivors(self) -> int:
        return len(self.row)

    @property
    def duplicates_removed(self) -> int:
        return self.entries - self.survivors

    def digest(self, i: int) -> int:
        return join_digest(self.digest_hi[i], self.digest_lo[i])

    def as_dict(self) -> dict[int, tuple[int, float]]:
        """row → (digest, score)."""
        return {int(r): (self.digest(i), float(s)) for i, (r, s) in enumerate(zip(self.row, self.score))}

    def select(self, mask: np.ndarray) -> "LanguageRows":
        return LanguageRows(self.lang, self.row[mask], self.digest_hi[mask], self.digest_lo[mask], self.score[mask], 0)


class InvertedTable:
    """
    Per-language row → (digest, score) maps produced by invert_and_dedup.

    Attributes:
        per_language: LanguageRows keyed by language, in language order
        num_rows: Row count of the source table
    """

    def __init__(self, per_language: dict[str, LanguageRows], num_rows: int):
        self.per_language = per_language
        self.num_rows = num_rows

    @property
    def languages(self) -> list[str]:
        return list(self.per_language)

    @property
    def duplicates_removed(self) -> int:
        return sum(rows.duplicates_removed for rows in self.per_language.values())

    def unique_before(self) -> dict[str, int]:
        return {lang: rows.entries for lang, rows in self.per_language.items()}

    def unique_after(self) -> dict[str, int]:
        return {lang: rows.survivors for lang, rows in self.per_language.items()}

    def to_mapping(self) -> dict[str, dict[int, tuple[int, float]]]:
        return {lang: rows.as_dict() for lang, rows in self.per_language.items()}


def dedup_language(lang: str, cols: dict[str, np.ndarray]) -> LanguageRows:
    """Keep the max-score, earliest-inserted entry per row."""
    rows, scores, slots = cols["row"], cols["score"], cols["slot"]
    if len(rows) == 0:
        return LanguageRows(lang, rows, cols["digest_hi"], cols["digest_lo"], scores, 0)

    # lexsort: last key is primary -> row asc, score desc, slot asc
    order = np.lexsort((slots, -scores, rows))
    sorted_rows = rows[order]
    first = np.ones(len(order), dtype=bool)
    first[1:] = sorted_rows[1:] != sorted_rows[:-1]
    keep = order[first]
    return LanguageRows(
        lang,
        rows[keep],
        cols["digest_hi"][keep],
        cols["digest_lo"][keep],
        scores[keep],
        entries=len(rows),
    )


def invert_and_dedup(table: TupleTable, workers: int = 1) -> InvertedTable:
    """
    Invert the table to per-language row maps, keeping one sentence per (language, row).

    Args:
        table: Table after the merge pass
        workers: Languages processed concurrently

    Returns:
        InvertedTable
    """
    languages = table.languages

    def run(lang: str) -> LanguageRows:
        return dedup_language(lang, table.entries(lang))

    if workers > 1 and len(languages) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, languages))
    else:
        results = [run(lang) for lang in languages]

    inverted = InvertedTable({rows.lang: rows for rows in results}, table.num_rows)
    logger.info(f"Inverted {len(languages)} languages, removed {inverted.duplicates_removed} same-language duplicates")
    return inverted
