"""
Read access to a built corpus directory.

Layout::

    <corpus>/tuples.jsonl     one tuple per line, ascending row id
    <corpus>/manifest.json    config, input checksums, stage counts
    <corpus>/stats.json       totals and the default parallelism histogram
    <corpus>/rejects.tsv      rejected input lines
    <corpus>/store/           sharded digest → sentence store
"""

import os
from pathlib import Path
from typing import Iterator

from app.core.exceptions import DataError
from mwpar.builder.tuples import TranslationTuple
from mwpar.ingest.textio import read_json

TUPLES_FILE = "tuples.jsonl"
MANIFEST_FILE = "manifest.json"
STATS_FILE = "stats.json"
REJECTS_FILE = "rejects.tsv"
STORE_DIR = "store"


class Corpus:
    """
    A built corpus.

    Attributes:
        root: Corpus directory
        manifest: Parsed manifest.json
        hash_bits: Digest width used when the corpus was built
    """

    def __init__(self, root):
        self.root = Path(root)
        manifest_path = self.root / MANIFEST_FILE
        if not manifest_path.exists() or not self.tuples_path.exists():
            raise DataError(f"{self.root} is not a corpus directory (missing {MANIFEST_FILE} or {TUPLES_FILE})")
        try:
            self.manifest = read_json(manifest_path)
        except (OSError, ValueError) as exc:
            raise DataError(f"Unreadable manifest in {self.root}: {exc}") from exc
        self.hash_bits: int = self.manifest.get("hash", {}).get("bits", 64)

    @property
    def tuples_path(self) -> Path:
        return self.root / TUPLES_FILE

    @property
    def languages(self) -> list[str]:
        return sorted(self.manifest.get("languages", {}))

    def counts(self) -> dict:
        return self.manifest.get("counts", {})

    def unique_sentences(self, stage: str = "unique_before_dedup") -> dict[str, int]:
        """Per-language unique sentence counts recorded at a build stage."""
        return {lang: info[stage] for lang, info in sorted(self.manifest.get("languages", {}).items())}

    def __iter__(self) -> Iterator[TranslationTuple]:
        return self.iter_range(0, None)

    def iter_range(self, start: int, end) -> Iterator[TranslationTuple]:
        """Tuples whose lines start in the byte range [start, end)."""
        with open(self.tuples_path, "rb") as f:
            f.seek(start)
            pos = start
            for line in f:
                if end is not None and pos >= end:
                    break
                pos += len(line)
                if line.strip():
                    yield TranslationTuple.from_json(line, self.hash_bits)

    def byte_ranges(self, parts: int) -> list[tuple[int, int]]:
        """Split tuples.jsonl into up to ``parts`` line-aligned byte ranges."""
        size = os.path.getsize(self.tuples_path)
        if size == 0 or parts <= 1:
            return [(0, size)]
        bounds = [0]
        with open(self.tuples_path, "rb") as f:
            for k in range(1, parts):
                f.seek(max(size * k // parts, bounds[-1]))
                if f.tell() > 0:
                    f.readline()
                bounds.append(min(f.tell(), size))
        bounds.append(size)
        return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
