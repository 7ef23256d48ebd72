"""
Monolingual filtering: ``lang<TAB>text`` lines.
"""

from typing import Iterable, Union

from mwpar.builder.corpus import Corpus
from mwpar.filter.base import FilterOutcome, ParallelismFilter, as_lookup
from mwpar.filter.lookup import ParallelismLookup
from mwpar.filter.policy import FilterPolicy
from mwpar.ingest.records import RejectRecord

Sentence = tuple[str, str]


class MonolingualFilter(ParallelismFilter[Sentence]):
    """A sentence's parallelism is the size of its tuple, or 1 if it has none."""

    scope = "monolingual"

    def parallelism(self, item: Sentence) -> int:
        lang, text = item
        return self.lookup.parallelism(lang, text)

    def group(self, item: Sentence) -> str:
        return item[0]

    def parse_line(self, line: str, line_no: int) -> Union[Sentence, RejectRecord]:
        fields = line.split("\t")
        if len(fields) != 2:
            return RejectRecord(line_no, f"field_count:{len(fields)}", line)
        lang = fields[0].strip()
        if not lang:
            return RejectRecord(line_no, "empty_language", line)
        return (lang, fields[1])


def filter_monolingual(
    data: Iterable[Sentence],
    corpus: Union[Corpus, ParallelismLookup],
    policy: FilterPolicy,
) -> FilterOutcome[Sentence]:
    """
    Filter (lang, text) sentences by the parallelism of their tuple.

    Args:
        data: Sentences as (language, text)
        corpus: Built corpus or a prebuilt lookup
        policy: Policy with ``scope="monolingual"``

    Returns:
        FilterOutcome: kept/dropped (drop mode) or annotated (annotate mode), plus summary
    """
    return MonolingualFilter(as_lookup(corpus), policy).collect(data)
