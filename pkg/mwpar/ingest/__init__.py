"""
Ingest module.

Parses scored bitext, digests sentences and orders records by binned
margin score across shards:
- Record types (BitextRecord, SentenceKey, HashedRecord)
- Fixed-seed 64/128-bit sentence digests
- TSV parsing with a rejects sink and reject cap
- Binned external ordering into a length-prefixed binary run
"""

from mwpar.ingest.binning import BinLayout, bin_and_order
from mwpar.ingest.hashing import hash_sentence
from mwpar.ingest.parser import BitextFormat, BitextParser, ParseStats, RejectSink, parse_bitext
from mwpar.ingest.records import BitextRecord, HashedRecord, RejectRecord, SentenceKey
from mwpar.ingest.runfile import RunReader, RunWriter

__all__ = [
    "BinLayout",
    "BitextFormat",
    "BitextParser",
    "BitextRecord",
    "HashedRecord",
    "ParseStats",
    "RejectRecord",
    "RejectSink",
    "RunReader",
    "RunWriter",
    "SentenceKey",
    "bin_and_order",
    "hash_sentence",
    "parse_bitext",
]
