"""
End-to-end corpus construction.

parse → bin and order → merge pass (feeding the sentence store) → invert and
dedup → coalesce → corpus directory. Every output file is a pure function of
the inputs and the RunConfig; the shard count, memory budget and temp dir
only change how the work is scheduled.
"""

import errno
import logging
import os
import shutil
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from app.config import RunConfig, Settings, make_run_config, settings
from app.core.exceptions import ResourceExhaustedError
from mwpar import __version__
from mwpar.analyze.buckets import DEFAULT_BUCKET_SPEC, DEFAULT_BUCKETS
from mwpar.analyze.histogram import histogram_from_size_counts
from mwpar.builder.coalesce import Coalescer
from mwpar.builder.corpus import MANIFEST_FILE, REJECTS_FILE, STATS_FILE, STORE_DIR, TUPLES_FILE, Corpus
from mwpar.builder.invert import InvertedTable, invert_and_dedup
from mwpar.builder.merge import merge_pass
from mwpar.builder.store import StoreWriter
from mwpar.ingest.binning import BinLayout, bin_and_order
from mwpar.ingest.hashing import hash_info
from mwpar.ingest.parser import BitextFormat, BitextParser, RejectSink
from mwpar.ingest.records import BitextRecord
from mwpar.ingest.textio import PathLike, file_sha256, iter_lines, open_text, write_json

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
# Rough in-memory footprint of one parsed record, used to size blocks.
RECORD_BYTES = 512


@dataclass
class InputInfo:
    path: str
    sha256: str
    first_line: int
    lines: int = 0
    parsed: int = 0
    rejected: int = 0

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "sha256": self.sha256,
            "first_line": self.first_line,
            "lines": self.lines,
            "parsed": self.parsed,
            "rejected": self.rejected,
        }


@dataclass
class BuildResult:
    """What a build produced."""

    corpus: Corpus
    manifest: dict
    stats: dict = field(default_factory=dict)


def block_size(runtime: Settings) -> int:
    """Records per block so that in-flight blocks of every worker fit the memory budget."""
    in_flight = 2 * runtime.shard_count + 1
    budget = runtime.memory_budget_mb * 1024 * 1024 // 4
    return max(1_000, min(runtime.block_records, budget // in_flight // RECORD_BYTES))


def size_counts(inverted: InvertedTable) -> dict[int, int]:
    """Tuple size → tuple count, from the inverted table."""
    if not inverted.per_language or inverted.num_rows == 0:
        return {}
    sizes = np.zeros(inverted.num_rows, dtype=np.int64)
    for rows in inverted.per_language.values():
        sizes += np.bincount(rows.row.astype(np.int64), minlength=inverted.num_rows)
    counts = np.bincount(sizes)
    return {size: int(n) for size, n in enumerate(counts) if size >= 2 and n}


def publish(stage: Path, out: Path) -> None:
    """
    Move a finished build from ``stage`` into ``out``, replacing the previous
    corpus files. The manifest is removed first and published last, so ``out``
    never holds a manifest next to another build's store.
    """
    previous = stage / ".previous"
    previous.mkdir()
    if (out / MANIFEST_FILE).exists():
        os.replace(out / MANIFEST_FILE, previous / MANIFEST_FILE)
    if (out / STORE_DIR).exists():
        os.replace(out / STORE_DIR, previous / STORE_DIR)
    for name in (STORE_DIR, TUPLES_FILE, STATS_FILE, REJECTS_FILE, MANIFEST_FILE):
        os.replace(stage / name, out / name)


class CorpusBuilder:
    """
    Builds a corpus directory from scored bitext files.

    Attributes:
        config: Output-affecting run parameters (written to the manifest)
        runtime: Execution settings (shard count, memory budget, temp dir)
        layout: Bin layout from the config
    """

    def __init__(self, config: RunConfig, runtime: Settings = settings):
        self.config = config.with_defaults(runtime)
        self.runtime = runtime
        self.layout = BinLayout(self.config.bin_lo, self.config.bin_hi, self.config.n_bins)
        self.inputs: list[InputInfo] = []
        self.parser: Optional[BitextParser] = None

    def _records(self, paths: Sequence[Path]) -> Iterator[BitextRecord]:
        parser = self.parser
        next_line = 1
        for path in paths:
            info = InputInfo(str(path), file_sha256(path), next_line)
            before = (parser.stats.lines, parser.stats.parsed, parser.stats.rejected)
            logger.info(f"Reading {path}")
            yield from parser.parse(iter_lines(path), first_line_no=next_line)
            info.lines = parser.stats.lines - before[0]
            info.parsed = parser.stats.parsed - before[1]
            info.rejected = parser.stats.rejected - before[2]
            next_line += info.lines
            self.inputs.append(info)
        parser.check_cap()

    def build(self, out_dir: PathLike) -> BuildResult:
        """
        Run every stage and write the corpus directory.

        Args:
            out_dir: Corpus directory (created). Existing corpus files are
                replaced only once the new build has succeeded.

        Returns:
            BuildResult

        Raises:
            RejectCapExceeded: If too many input lines were malformed
            ResourceExhaustedError: On memory or disk exhaustion
            ConfigError: On invalid parameters
        """
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [Path(p) for p in self.config.inputs]
        shards = self.runtime.shard_count
        block_records = block_size(self.runtime)
        logger.info(
            f"Building {out} from {len(paths)} input(s): shards={shards}, "
            f"memory_budget_mb={self.runtime.memory_budget_mb}, block_records={block_records}"
        )

        stage = Path(tempfile.mkdtemp(prefix=".mwpar-build-", dir=out))
        store_root = stage / STORE_DIR
        workdir = Path(tempfile.mkdtemp(prefix=".mwpar-work-", dir=self.runtime.tmp_dir or stage))

        try:
            with open_text(stage / REJECTS_FILE, "wt") as rejects_stream:
                fmt = BitextFormat(reject_cap=self.config.reject_cap)
                self.parser = BitextParser(fmt, RejectSink(rejects_stream))
                ordered = bin_and_order(
                    self._records(paths), self.layout, shards, workdir,
                    hash_bits=self.config.hash_bits, block_records=block_records,
                )

            store_writer = StoreWriter(store_root, self.config.store_shards, self.config.hash_bits)
            try:
                table = merge_pass(ordered, on_insert=store_writer.add, log_every=self.runtime.log_every)
            finally:
                store_writer.close()
            store = store_writer.finalize()

            inverted = invert_and_dedup(table, workers=shards)
            coalescer = Coalescer(inverted, store, workdir=workdir / "coalesce", workers=shards)
            coalesce_stats = coalescer.run()
            with open(stage / TUPLES_FILE, "wb") as f:
                for line in coalescer.iter_lines():
                    f.write(line)
            coalescer.cleanup()

            counts = {
                "lines_read": self.parser.stats.lines,
                "lines_rejected": self.parser.stats.rejected,
                **{k: v for k, v in table.stats.to_dict().items() if not k.startswith("pairs_joined_on")},
                "rows_created": table.num_rows,
                "sentences_in_table": len(table),
                "duplicates_removed": inverted.duplicates_removed,
                **coalesce_stats.to_dict(),
            }
            before, after = inverted.unique_before(), inverted.unique_after()
            manifest = {
                "format_version": FORMAT_VERSION,
                "tool": {"name": self.runtime.app_name, "version": __version__},
                "config": self.config.to_manifest(),
                "bin_layout": self.layout.to_dict(),
                "hash": hash_info(self.config.hash_bits),
                "inputs": [info.to_dict() for info in self.inputs],
                "reject_reasons": dict(sorted(self.parser.stats.reasons.items())),
                "pair_counts": ordered.meta.get("pair_counts", {}),
                "counts": counts,
                "languages": {
                    lang: {"unique_before_dedup": before[lang], "unique_after_dedup": after[lang]}
                    for lang in sorted(before)
                },
            }
            histogram = histogram_from_size_counts(size_counts(inverted), DEFAULT_BUCKETS)
            stats = {
                "tuples": coalesce_stats.tuples_out,
                "sentences": coalesce_stats.sentences_out,
                "languages": len(before),
                "buckets": DEFAULT_BUCKET_SPEC,
                "histogram": histogram.to_report().to_dict(),
            }
            write_json(stage / STATS_FILE, stats)
            write_json(stage / MANIFEST_FILE, manifest)
            shutil.rmtree(workdir, ignore_errors=True)
            publish(stage, out)

        except MemoryError as exc:
            raise ResourceExhaustedError(f"Out of memory while building {out}; lower --shards or raise the memory budget") from exc
        except OSError as exc:
            if exc.errno == errno.ENOSPC:
                raise ResourceExhaustedError(f"Disk full while building {out}") from exc
            raise
        finally:
            shutil.rmtree(workdir, ignore_errors=True)
            shutil.rmtree(stage, ignore_errors=True)

        logger.info(
            f"Built {counts['tuples_out']} tuples with {counts['sentences_out']} sentences "
            f"from {counts['pairs_in']} pairs in {out}"
        )
        return BuildResult(Corpus(out), manifest, stats)


def build_corpus(inputs: Sequence[PathLike], out_dir: PathLike, config: Optional[RunConfig] = None, runtime: Settings = settings) -> BuildResult:
    """
    Build a corpus from scored bitext files.

    Args:
        inputs: Bitext TSV files (``.gz`` / ``.zst`` accepted), read in order
        out_dir: Corpus directory
        config: Run parameters; unset build parameters come from ``runtime``
        runtime: Execution settings

    Returns:
        BuildResult
    """
    base = config.model_dump() if config is not None else {"command": "build"}
    base["inputs"] = [str(p) for p in inputs]
    base["output"] = str(out_dir)
    return CorpusBuilder(make_run_config(**base), runtime).build(out_dir)
