"""
Bitext filtering: ingest-format pairs.
"""

from typing import Iterable, Union

from mwpar.builder.corpus import Corpus
from mwpar.filter.base import FilterOutcome, ParallelismFilter, as_lookup
from mwpar.filter.lookup import ParallelismLookup
from mwpar.filter.policy import FilterPolicy
from mwpar.ingest.parser import parse_line
from mwpar.ingest.records import BitextRecord, RejectRecord


class BitextFilter(ParallelismFilter[BitextRecord]):
    """A pair's parallelism is the larger of its two sides' parallelisms."""

    scope = "bitext"

    def parallelism(self, item: BitextRecord) -> int:
        return max(
            self.lookup.parallelism(item.src_lang, item.src_text),
            self.lookup.parallelism(item.tgt_lang, item.tgt_text),
        )

    def group(self, item: BitextRecord) -> str:
        return f"{item.src_lang}-{item.tgt_lang}"

    def parse_line(self, line: str, line_no: int) -> Union[BitextRecord, RejectRecord]:
        return parse_line(line, line_no)


def filter_bitext(
    pairs: Iterable[BitextRecord],
    corpus: Union[Corpus, ParallelismLookup],
    policy: FilterPolicy,
) -> FilterOutcome[BitextRecord]:
    """
    Filter sentence pairs by multi-way parallelism.

    Args:
        pairs: BitextRecords
        corpus: Built corpus or a prebuilt lookup
        policy: Policy with ``scope="bitext"``

    Returns:
        FilterOutcome with per-direction counts in the summary
    """
    return BitextFilter(as_lookup(corpus), policy).collect(pairs)
