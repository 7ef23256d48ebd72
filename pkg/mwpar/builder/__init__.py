"""
Builder module.

Greedy tuple construction from an ordered run:
- TupleTable and the four-case merge pass
- Inversion with same-language near-duplicate removal
- Sharded digest → sentence store
- Coalescing into TranslationTuples and the corpus directory
"""

from mwpar.builder.coalesce import Coalescer, coalesce
from mwpar.builder.corpus import Corpus
from mwpar.builder.invert import InvertedTable, invert_and_dedup
from mwpar.builder.merge import MergeStats, merge_pass
from mwpar.builder.pipeline import BuildResult, CorpusBuilder, build_corpus
from mwpar.builder.store import HashSentenceStore, StoreWriter
from mwpar.builder.table import TupleTable
from mwpar.builder.tuples import Member, TranslationTuple

__all__ = [
    "BuildResult",
    "Coalescer",
    "Corpus",
    "CorpusBuilder",
    "HashSentenceStore",
    "InvertedTable",
    "Member",
    "MergeStats",
    "StoreWriter",
    "TranslationTuple",
    "TupleTable",
    "build_corpus",
    "coalesce",
    "invert_and_dedup",
    "merge_pass",
]
