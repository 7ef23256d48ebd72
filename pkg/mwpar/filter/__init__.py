"""
Filter module.

Drops or annotates monolingual sentences and sentence pairs by the size of
the translation tuple they belong to.
"""

from mwpar.filter.base import Decision, FilterOutcome, FilterSummary, ParallelismFilter
from mwpar.filter.bitext import BitextFilter, filter_bitext
from mwpar.filter.lookup import ParallelismLookup
from mwpar.filter.monolingual import MonolingualFilter, filter_monolingual
from mwpar.filter.policy import FilterPolicy, parse_threshold
from mwpar.filter.runner import run_filter

__all__ = [
    "BitextFilter",
    "Decision",
    "FilterOutcome",
    "FilterPolicy",
    "FilterSummary",
    "MonolingualFilter",
    "ParallelismFilter",
    "ParallelismLookup",
    "filter_bitext",
    "filter_monolingual",
    "parse_threshold",
    "run_filter",
]
