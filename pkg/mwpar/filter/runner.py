"""
File-level filter runs.

Input is split into contiguous chunks of lines; chunks are decided in
parallel and written back in input order. Output files mirror the input
lines byte for byte; annotate mode appends a ``parallelism`` column to every
input line, left empty on malformed ones.

Outputs in ``out_dir``::

    kept.tsv / dropped.tsv    drop mode
    annotated.tsv             annotate mode
    rejects.tsv               malformed input lines
    summary.json              run config, policy, counts per language or direction, parallelism distribution
"""

import logging
from collections import deque
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional

from mwpar.builder.corpus import Corpus
from mwpar.filter.base import FilterSummary, ParallelismFilter
from mwpar.filter.bitext import BitextFilter
from mwpar.filter.lookup import ParallelismLookup
from mwpar.filter.monolingual import MonolingualFilter
from mwpar.filter.policy import FilterPolicy
from mwpar.ingest.records import RejectRecord
from mwpar.ingest.textio import INPUT_ERRORS, PathLike, file_sha256, is_valid_utf8, iter_lines, open_text, write_json

logger = logging.getLogger(__name__)

CHUNK_LINES = 10_000

_FILTERS = {"monolingual": MonolingualFilter, "bitext": BitextFilter}

# Set once per worker process by _init_worker.
_worker_filter: Optional[ParallelismFilter] = None


@dataclass
class ChunkResult:
    first: list[str] = field(default_factory=list)
    second: list[str] = field(default_factory=list)
    rejects: list[str] = field(default_factory=list)
    summary: FilterSummary = field(default_factory=FilterSummary)


def make_filter(lookup: ParallelismLookup, policy: FilterPolicy) -> ParallelismFilter:
    return _FILTERS[policy.scope](lookup, policy)


def _decide_chunk(flt: ParallelismFilter, first_line_no: int, lines: list[str]) -> ChunkResult:
    result = ChunkResult()
    annotate = flt.policy.mode == "annotate"
    for line_no, line in enumerate(lines, start=first_line_no):
        if is_valid_utf8(line):
            item = flt.parse_line(line, line_no)
        else:
            item = RejectRecord(line_no, "bad_utf8", line)
        if isinstance(item, RejectRecord):
            result.rejects.append(item.to_tsv())
            result.summary.rejected += 1
            if annotate:
                # Empty parallelism column keeps annotated output line-aligned with the input.
                result.first.append(f"{line}\t")
            continue
        decision = flt.decide(item)
        result.summary.add(decision)
        if annotate:
            result.first.append(f"{line}\t{decision.parallelism}")
        elif decision.kept:
            result.first.append(line)
        else:
            result.second.append(line)
    return result


def _init_worker(lookup: ParallelismLookup, policy: FilterPolicy) -> None:
    global _worker_filter
    _worker_filter = make_filter(lookup, policy)


def _decide_in_worker(first_line_no: int, lines: list[str]) -> ChunkResult:
    return _decide_chunk(_worker_filter, first_line_no, lines)


def _chunks(path: PathLike, size: int) -> Iterator[tuple[int, list[str]]]:
    lines = iter_lines(path)
    line_no = 1
    while chunk := list(islice(lines, size)):
        yield line_no, chunk
        line_no += len(chunk)


def _results(flt: ParallelismFilter, path: PathLike, workers: int, chunk_lines: int) -> Iterator[ChunkResult]:
    if workers <= 1:
        for first, lines in _chunks(path, chunk_lines):
            yield _decide_chunk(flt, first, lines)
        return

    pending: deque[Future] = deque()
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(flt.lookup, flt.policy)) as pool:
        for first, lines in _chunks(path, chunk_lines):
            pending.append(pool.submit(_decide_in_worker, first, lines))
            if len(pending) >= 2 * workers:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def run_filter(
    corpus: Corpus,
    input_path: PathLike,
    policy: FilterPolicy,
    out_dir: PathLike,
    workers: int = 1,
    chunk_lines: int = CHUNK_LINES,
    config: Optional[Mapping[str, Any]] = None,
) -> FilterSummary:
    """
    Filter a TSV file against a corpus.

    Args:
        corpus: Built corpus
        input_path: ``lang<TAB>text`` (monolingual) or ingest-format (bitext) lines
        policy: Filter policy
        out_dir: Output directory (created)
        workers: Worker processes
        chunk_lines: Lines per work unit
        config: Run config written into summary.json for replay

    Returns:
        FilterSummary
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    flt = make_filter(ParallelismLookup.from_corpus(corpus), policy)
    annotate = policy.mode == "annotate"

    first_name, second_name = ("annotated.tsv", None) if annotate else ("kept.tsv", "dropped.tsv")
    summary = FilterSummary()
    first = open_text(out / first_name, "wt", errors=INPUT_ERRORS)
    second = open_text(out / second_name, "wt", errors=INPUT_ERRORS) if second_name else None
    rejects = open_text(out / "rejects.tsv", "wt")
    try:
        for result in _results(flt, input_path, workers, chunk_lines):
            for line in result.first:
                first.write(line + "\n")
            if second is not None:
                for line in result.second:
                    second.write(line + "\n")
            for line in result.rejects:
                rejects.write(line + "\n")
            summary = summary.merge(result.summary)
    finally:
        first.close()
        rejects.close()
        if second is not None:
            second.close()

    document = {
        "policy": policy.to_dict(),
        "input": {"path": str(input_path), "sha256": file_sha256(input_path)},
        "corpus": {"hash": corpus.manifest.get("hash", {}), "tuples": corpus.counts().get("tuples_out")},
        **summary.to_dict(),
    }
    if config is not None:
        document["config"] = dict(config)
    write_json(out / "summary.json", document)
    if summary.rejected:
        logger.warning(f"Skipped {summary.rejected} malformed line(s) from {input_path}")
    logger.info(f"Filter kept {summary.kept} and dropped {summary.dropped} of {summary.total} items")
    return summary
