"""
Coalescing inverted rows into translation tuples.

Work is split by store shard: output shard ``s`` owns the rows with
``row % shards == s`` and loads only store shard ``s``. Each shard writes a
part file of ``<row>\\t<tuple json>`` lines in ascending row order; the parts
are then merged by row id, so emission order is ascending row id for any
worker count.
"""

import heapq
import logging
import shutil
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from app.core.exceptions import StoreCorruptionError
from mwpar.builder.invert import InvertedTable, LanguageRows
from mwpar.builder.store import HashSentenceStore, StoreShard
from mwpar.builder.tuples import Member, TranslationTuple
from mwpar.ingest.hashing import join_digest

logger = logging.getLogger(__name__)


@dataclass
class CoalesceStats:
    """Counts from the coalesce step."""

    tuples_out: int = 0
    sentences_out: int = 0
    rows_dropped: int = 0

    def add(self, other: "CoalesceStats") -> None:
        self.tuples_out += other.tuples_out
        self.sentences_out += other.sentences_out
        self.rows_dropped += other.rows_dropped

    def to_dict(self) -> dict:
        return {"tuples_out": self.tuples_out, "sentences_out": self.sentences_out, "rows_dropped": self.rows_dropped}


def _shard_members(inverted: InvertedTable, shard: int, shards: int) -> list[LanguageRows]:
    return [rows.select(rows.row % shards == shard) for rows in inverted.per_language.values()]


def _coalesce_shard(shard: int, parts: list[LanguageRows], store_root: str, out_path: str) -> CoalesceStats:
    stats = CoalesceStats()
    languages = [p.lang for p in parts]
    rows = np.concatenate([p.row for p in parts]) if parts else np.empty(0, dtype=np.int64)
    lang_idx = np.concatenate([np.full(len(p.row), i, dtype=np.int64) for i, p in enumerate(parts)]) if parts else rows
    his = np.concatenate([p.digest_hi for p in parts]) if parts else np.empty(0, dtype=np.uint64)
    los = np.concatenate([p.digest_lo for p in parts]) if parts else np.empty(0, dtype=np.uint64)
    scores = np.concatenate([p.score for p in parts]) if parts else np.empty(0, dtype=np.float64)

    with open(out_path, "wb") as out:
        if len(rows) == 0:
            return stats
        store: StoreShard = HashSentenceStore(Path(store_root)).load_shard(shard)
        order = np.lexsort((lang_idx, rows))
        starts = np.flatnonzero(np.r_[True, rows[order][1:] != rows[order][:-1]])
        ends = np.r_[starts[1:], len(order)]

        for start, end in zip(starts, ends):
            group = order[start:end]
            row = int(rows[group[0]])
            if len(group) < 2:
                stats.rows_dropped += 1
                continue
            members = {}
            for i in group:
                lang = languages[lang_idx[i]]
                digest = join_digest(his[i], los[i])
                text = store.get(digest)
                if text is None:
                    raise StoreCorruptionError(lang, digest)
                members[lang] = Member(digest, text, float(scores[i]))
            tup = TranslationTuple(row, members)
            out.write(b"%d\t" % row + tup.to_json() + b"\n")
            stats.tuples_out += 1
            stats.sentences_out += tup.size
    return stats


def _row_of(line: bytes) -> int:
    return int(line.split(b"\t", 1)[0])


class Coalescer:
    """
    Runs the sharded coalesce and exposes the merged result.

    Attributes:
        inverted: Output of invert_and_dedup
        store: Finalized sentence store
        workdir: Directory for part files
        workers: Shards processed concurrently
        stats: CoalesceStats after ``run``
    """

    def __init__(self, inverted: InvertedTable, store: HashSentenceStore, workdir: Optional[Path] = None, workers: int = 1):
        self.inverted = inverted
        self.store = store
        self._own_workdir = workdir is None
        self.workdir = Path(workdir) if workdir is not None else Path(tempfile.mkdtemp(prefix="mwpar-coalesce-"))
        self.workers = workers
        self.stats = CoalesceStats()
        self.parts: list[Path] = []

    def run(self) -> CoalesceStats:
        self.workdir.mkdir(parents=True, exist_ok=True)
        shards = self.store.shards
        self.parts = [self.workdir / f"part-{s:05d}.tsv" for s in range(shards)]
        jobs = [
            (s, _shard_members(self.inverted, s, shards), str(self.store.root), str(self.parts[s]))
            for s in range(shards)
        ]
        if self.workers > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(_coalesce_shard, *zip(*jobs)))
        else:
            results = [_coalesce_shard(*job) for job in jobs]
        for result in results:
            self.stats.add(result)
        logger.info(
            f"Coalesced {self.stats.tuples_out} tuples, {self.stats.sentences_out} sentences, "
            f"dropped {self.stats.rows_dropped} rows below two languages"
        )
        return self.stats

    def iter_lines(self) -> Iterator[bytes]:
        """Tuple JSON lines (with trailing newline) in ascending row order."""
        files = [open(p, "rb") for p in self.parts]
        try:
            for line in heapq.merge(*files, key=_row_of):
                yield line.split(b"\t", 1)[1]
        finally:
            for f in files:
                f.close()

    def iter_tuples(self) -> Iterator[TranslationTuple]:
        for line in self.iter_lines():
            yield TranslationTuple.from_json(line, self.store.hash_bits)

    def cleanup(self) -> None:
        for part in self.parts:
            part.unlink(missing_ok=True)
        if self._own_workdir:
            shutil.rmtree(self.workdir, ignore_errors=True)


def coalesce(
    inverted: InvertedTable,
    store: HashSentenceStore,
    workers: int = 1,
    stats: Optional[CoalesceStats] = None,
) -> Iterator[TranslationTuple]:
    """
    Emit one TranslationTuple per row retaining at least two languages.

    Args:
        inverted: Per-language row maps
        store: Store resolving every digest in ``inverted``
        workers: Shards processed concurrently
        stats: Optional CoalesceStats filled in as a side effect

    Yields:
        TranslationTuple in ascending row order

    Raises:
        StoreCorruptionError: If a digest cannot be resolved
    """
    coalescer = Coalescer(inverted, store, workers=workers)
    try:
        result = coalescer.run()
        if stats is not None:
            stats.add(result)
        yield from coalescer.iter_tuples()
    finally:
        coalescer.cleanup()
