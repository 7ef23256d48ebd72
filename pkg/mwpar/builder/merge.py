"""
Greedy merge pass.

Records arrive in descending (binned) margin order. Each one takes exactly
one of four actions:

    (a) neither sentence present  -> new row holding both, at the record's score
    (b) only the source present   -> target joins the source's row
    (c) only the target present   -> source joins the target's row
    (d) both present              -> record discarded; rows are never unioned

The pass is a sequential fold whose result depends on record order.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from app.config import settings
from mwpar.builder.table import TupleTable
from mwpar.ingest.records import HashedRecord

logger = logging.getLogger(__name__)

# Called as on_insert(lang, digest, row, text) whenever a sentence enters the table.
InsertHook = Callable[[str, int, int, str], None]


@dataclass
class MergeStats:
    """
    Merge accounting.

    Conservation: ``pairs_in == pairs_new_row + pairs_joined + pairs_discarded``.
    """

    pairs_in: int = 0
    pairs_new_row: int = 0
    pairs_joined_src: int = 0
    pairs_joined_tgt: int = 0
    pairs_discarded: int = 0

    @property
    def pairs_joined(self) -> int:
        return self.pairs_joined_src + self.pairs_joined_tgt

    def to_dict(self) -> dict:
        return {
            "pairs_in": self.pairs_in,
            "pairs_new_row": self.pairs_new_row,
            "pairs_joined": self.pairs_joined,
            "pairs_joined_on_src": self.pairs_joined_src,
            "pairs_joined_on_tgt": self.pairs_joined_tgt,
            "pairs_discarded": self.pairs_discarded,
        }


def merge_pass(
    ordered_records: Iterable[HashedRecord],
    on_insert: Optional[InsertHook] = None,
    log_every: Optional[int] = None,
) -> TupleTable:
    """
    Fold an ordered run into a TupleTable.

    Args:
        ordered_records: Records in the order produced by bin_and_order
        on_insert: Optional hook receiving every sentence as it enters the table
        log_every: Progress counter interval (default: settings.log_every)

    Returns:
        TupleTable: Final table, with MergeStats in ``table.stats``

    Raises:
        RowOverflowError: If the row id space is exhausted
    """
    log_every = log_every or settings.log_every
    table = TupleTable()
    stats = MergeStats()

    for record in ordered_records:
        stats.pairs_in += 1
        src_row = table.row_of(record.src_lang, record.src_digest)
        tgt_row = table.row_of(record.tgt_lang, record.tgt_digest)

        if src_row is None and tgt_row is None:
            row = table.new_row()
            table.add(record.src_lang, record.src_digest, row, record.margin)
            table.add(record.tgt_lang, record.tgt_digest, row, record.margin)
            stats.pairs_new_row += 1
            if on_insert is not None:
                on_insert(record.src_lang, record.src_digest, row, record.src_text)
                on_insert(record.tgt_lang, record.tgt_digest, row, record.tgt_text)
        elif tgt_row is None:
            table.add(record.tgt_lang, record.tgt_digest, src_row, record.margin)
            stats.pairs_joined_src += 1
            if on_insert is not None:
                on_insert(record.tgt_lang, record.tgt_digest, src_row, record.tgt_text)
        elif src_row is None:
            table.add(record.src_lang, record.src_digest, tgt_row, record.margin)
            stats.pairs_joined_tgt += 1
            if on_insert is not None:
                on_insert(record.src_lang, record.src_digest, tgt_row, record.src_text)
        else:
            stats.pairs_discarded += 1

        if stats.pairs_in % log_every == 0:
            logger.info(f"Merged {stats.pairs_in} pairs into {table.num_rows} rows")

    table.stats = stats
    logger.info(
        f"Merge pass done: {stats.pairs_in} pairs, {table.num_rows} rows, "
        f"{stats.pairs_joined} joins, {stats.pairs_discarded} discarded"
    )
    return table
