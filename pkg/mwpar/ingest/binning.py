"""
Binned, score-descending ordering of bitext.

Rather than sorting every pair by margin, margins are binned and records
are bucketed by bin, like one pass of a radix sort. Input is cut into
contiguous blocks of records; each block is hashed, binned and stably sorted
by descending bin in a worker, then spilled to disk. The final run is built
by walking bins from highest to lowest and concatenating each block's
segment for that bin in block order, so within a bin input order is kept and
the result does not depend on how many workers took part.
"""

import errno
import logging
import math
import os
from collections import Counter, deque
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from app.core.exceptions import ConfigError, ResourceExhaustedError
from mwpar.ingest.hashing import hash_sentence
from mwpar.ingest.records import BitextRecord, HashedRecord
from mwpar.ingest.runfile import RunReader, RunWriter, meta_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinLayout:
    """
    Equal-width margin bins over [lo, hi); margins outside clamp to the edge bins.

    Attributes:
        lo: Lower edge of bin 0
        hi: Upper edge of the last bin
        n_bins: Number of bins
    """

    lo: float = 1.0
    hi: float = 1.5
    n_bins: int = 500

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo >= self.hi:
            raise ConfigError(f"Bin layout needs finite lo < hi, got [{self.lo}, {self.hi})")
        if self.n_bins < 1:
            raise ConfigError(f"Bin layout needs at least one bin, got {self.n_bins}")

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / self.n_bins

    def bin_index(self, margin: float) -> int:
        index = math.floor((margin - self.lo) / self.width)
        return min(max(index, 0), self.n_bins - 1)

    def bin_indices(self, margins: np.ndarray) -> np.ndarray:
        index = np.floor((np.asarray(margins, dtype=np.float64) - self.lo) / self.width)
        return np.clip(index, 0, self.n_bins - 1).astype(np.int64)

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "n_bins": self.n_bins}

    @classmethod
    def parse(cls, spec: str) -> "BinLayout":
        """Parse ``LO:HI:N``."""
        try:
            lo, hi, n_bins = spec.split(":")
            return cls(float(lo), float(hi), int(n_bins))
        except ValueError as exc:
            raise ConfigError(f"Bin layout must look like LO:HI:N, got {spec!r}") from exc


@dataclass
class BlockSpill:
    """One block's spilled, bin-sorted records."""

    index: int
    path: Path
    segments: dict[int, tuple[int, int]]
    pair_counts: Counter = field(default_factory=Counter)


def hash_record(record: BitextRecord, hash_bits: int) -> HashedRecord:
    return HashedRecord(
        record.src_lang, record.tgt_lang,
        hash_sentence(record.src_text, hash_bits), hash_sentence(record.tgt_text, hash_bits),
        record.margin, record.src_text, record.tgt_text,
    )


def _spill_block(index: int, records: list[BitextRecord], layout: BinLayout, hash_bits: int, workdir: str) -> BlockSpill:
    bins = layout.bin_indices(np.fromiter((r.margin for r in records), dtype=np.float64, count=len(records)))
    order = np.argsort(-bins, kind="stable")

    path = Path(workdir) / f"block-{index:06d}.run"
    segments: dict[int, tuple[int, int]] = {}
    pair_counts: Counter = Counter()
    with RunWriter(path, hash_bits) as writer:
        current, start = None, 0
        for i in order:
            b = int(bins[i])
            if b != current:
                if current is not None:
                    segments[current] = (start, writer.tell())
                current, start = b, writer.tell()
            record = records[i]
            writer.write(hash_record(record, hash_bits))
            pair_counts[f"{record.src_lang}-{record.tgt_lang}"] += 1
        if current is not None:
            segments[current] = (start, writer.tell())
    return BlockSpill(index, path, segments, pair_counts)


def _blocks(records: Iterable[BitextRecord], size: int) -> Iterator[list[BitextRecord]]:
    it = iter(records)
    while block := list(islice(it, size)):
        yield block


def _spill_all(records, layout, hash_bits, workdir, shards, block_records) -> list[BlockSpill]:
    blocks = _blocks(records, block_records)
    if shards == 1:
        return [_spill_block(i, block, layout, hash_bits, str(workdir)) for i, block in enumerate(blocks)]

    spills: list[BlockSpill] = []
    pending: deque[Future] = deque()
    with ProcessPoolExecutor(max_workers=shards) as pool:
        for i, block in enumerate(blocks):
            pending.append(pool.submit(_spill_block, i, block, layout, hash_bits, str(workdir)))
            if len(pending) >= 2 * shards:
                spills.append(pending.popleft().result())
        while pending:
            spills.append(pending.popleft().result())
    return spills


def bin_and_order(
    records: Iterable[BitextRecord],
    layout: BinLayout,
    shards: int,
    workdir: Path,
    hash_bits: int = 64,
    block_records: int = 100_000,
    out_name: str = "ordered.run",
) -> RunReader:
    """
    Produce the score-descending run used by the merge pass.

    Output is ordered by descending bin index; within a bin, input order is
    preserved. The result is identical for any shard count.

    Args:
        records: Parsed records; may exceed memory
        layout: Bin layout, fixed for the run
        shards: Number of parallel workers hashing and partitioning blocks
        workdir: Directory for block spills and the output run
        hash_bits: Digest width
        block_records: Records per contiguous block

    Returns:
        RunReader: Reader over the ordered run

    Raises:
        ResourceExhaustedError: If the disk fills up; partial files are removed
    """
    if shards < 1:
        raise ConfigError(f"Shard count must be positive, got {shards}")
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    out_path = workdir / out_name
    spills: list[BlockSpill] = []
    completed = False

    try:
        spills = _spill_all(records, layout, hash_bits, workdir, shards, block_records)
        logger.info(f"Spilled {len(spills)} blocks into {workdir}")

        pair_counts: Counter = Counter()
        for spill in spills:
            pair_counts.update(spill.pair_counts)
        readers = [RunReader(spill.path) for spill in spills]
        occupied = sorted({b for spill in spills for b in spill.segments}, reverse=True)

        with RunWriter(out_path, hash_bits) as writer:
            writer.meta = {"layout": layout.to_dict(), "pair_counts": dict(sorted(pair_counts.items()))}
            for b in occupied:
                for spill, reader in zip(spills, readers):
                    segment = spill.segments.get(b)
                    if segment is not None:
                        for record in reader.read_segment(*segment):
                            writer.write(record)
        completed = True
        logger.info(f"Ordered run has {writer.count} records over {len(occupied)} occupied bins")
        return RunReader(out_path)

    except OSError as exc:
        if exc.errno == errno.ENOSPC:
            raise ResourceExhaustedError(f"Disk full while ordering records in {workdir}") from exc
        raise
    finally:
        for spill in spills:
            _remove(spill.path)
        if not completed:
            _remove(out_path)
        _remove_stray_blocks(workdir, completed)


def _remove(path: Path) -> None:
    for p in (path, meta_path(path)):
        try:
            os.remove(p)
        except FileNotFoundError:
            pass


def _remove_stray_blocks(workdir: Path, completed: bool) -> None:
    # Blocks spilled by workers whose results were never collected.
    if completed:
        return
    for path in workdir.glob("block-*.run"):
        _remove(path)
