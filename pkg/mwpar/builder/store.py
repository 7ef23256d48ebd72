"""
Sharded digest → sentence store.

Sentences are appended to ``store/<shard>.bin`` as they enter the tuple
table, sharded by the row they join (``row % shards``). Rows never move, so
each output shard of the coalesce step needs exactly one store shard in
memory. ``finalize`` writes ``store/<shard>.idx``: fixed-width records
``(digest_hi u64, digest_lo u64, offset u64, length u32)`` sorted by digest.

Record layout in ``.bin``: ``digest_hi u64 | digest_lo u64 | varint length | UTF-8 bytes``.
"""

import logging
import struct
from pathlib import Path
from typing import Optional

import numpy as np

from app.core.exceptions import DataError
from mwpar.ingest.hashing import split_digest
from mwpar.ingest.runfile import decode_varint, encode_varint
from mwpar.ingest.textio import read_json, write_json

logger = logging.getLogger(__name__)

INDEX_DTYPE = np.dtype([("hi", "<u8"), ("lo", "<u8"), ("offset", "<u8"), ("length", "<u4")])

_DIGEST = struct.Struct("<QQ")


def shard_paths(root: Path, shard: int) -> tuple[Path, Path]:
    return root / f"{shard:05d}.bin", root / f"{shard:05d}.idx"


class StoreWriter:
    """
    Append-only writer feeding the store during the merge pass.

    Attributes:
        root: Store directory
        shards: Number of shards
        written: Sentences appended
    """

    def __init__(self, root: Path, shards: int, hash_bits: int):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.shards = shards
        self.hash_bits = hash_bits
        self.written = 0
        self._files = [open(shard_paths(self.root, k)[0], "wb") for k in range(shards)]

    def add(self, lang: str, digest: int, row: int, text: str) -> None:
        data = text.encode("utf-8")
        self._files[row % self.shards].write(_DIGEST.pack(*split_digest(digest)) + encode_varint(len(data)) + data)
        self.written += 1

    def close(self) -> None:
        for f in self._files:
            f.close()

    def finalize(self) -> "HashSentenceStore":
        """Close the shard files, write per-shard indexes and the store metadata."""
        self.close()
        for shard in range(self.shards):
            _write_index(self.root, shard)
        write_json(self.root / "meta.json", {"shards": self.shards, "hash_bits": self.hash_bits, "assignment": "row % shards"})
        logger.info(f"Sentence store finalized: {self.written} sentences in {self.shards} shards")
        return HashSentenceStore(self.root)


def _scan(data: bytes):
    pos = 0
    while pos < len(data):
        hi, lo = _DIGEST.unpack_from(data, pos)
        length, start = decode_varint(data, pos + _DIGEST.size)
        yield hi, lo, start, length
        pos = start + length


def _write_index(root: Path, shard: int) -> None:
    bin_path, idx_path = shard_paths(root, shard)
    index = np.fromiter(_scan(bin_path.read_bytes()), dtype=INDEX_DTYPE)

    if len(index):
        order = np.lexsort((np.arange(len(index)), index["lo"], index["hi"]))
        index = index[order]
        first = np.ones(len(index), dtype=bool)
        first[1:] = (index["hi"][1:] != index["hi"][:-1]) | (index["lo"][1:] != index["lo"][:-1])
        index = index[first]
    index.tofile(idx_path)


class StoreShard:
    """One store shard loaded in memory; digests are found by binary search in its sorted index."""

    def __init__(self, root: Path, shard: int):
        bin_path, idx_path = shard_paths(root, shard)
        try:
            self._data = bin_path.read_bytes()
            index = np.fromfile(idx_path, dtype=INDEX_DTYPE)
        except OSError as exc:
            raise DataError(f"Cannot read store shard {shard} in {root}: {exc}") from exc
        self._hi = np.ascontiguousarray(index["hi"])
        self._lo = np.ascontiguousarray(index["lo"])
        self._offset = np.ascontiguousarray(index["offset"])
        self._length = np.ascontiguousarray(index["length"])

    def __len__(self) -> int:
        return len(self._hi)

    def _position(self, digest: int) -> int:
        hi, lo = (np.uint64(part) for part in split_digest(digest))
        start = int(np.searchsorted(self._hi, hi, side="left"))
        end = int(np.searchsorted(self._hi, hi, side="right"))
        i = start + int(np.searchsorted(self._lo[start:end], lo))
        return i if i < end and self._lo[i] == lo else -1

    def __contains__(self, digest: int) -> bool:
        return self._position(digest) >= 0

    def lookup(self, digest: int) -> str:
        """Return the sentence for a digest; raises KeyError if absent."""
        i = self._position(digest)
        if i < 0:
            raise KeyError(digest)
        offset = int(self._offset[i])
        return self._data[offset:offset + int(self._length[i])].decode("utf-8")

    def get(self, digest: int) -> Optional[str]:
        try:
            return self.lookup(digest)
        except KeyError:
            return None


class HashSentenceStore:
    """
    Reader over a finalized store.

    Invariant: ``lookup(hash_sentence(t)) == t`` for every sentence entered
    into the tuple table.
    """

    def __init__(self, root: Path):
        self.root = Path(root)
        try:
            meta = read_json(self.root / "meta.json")
        except (OSError, ValueError) as exc:
            raise DataError(f"Sentence store {self.root} has no readable metadata: {exc}") from exc
        self.shards: int = meta["shards"]
        self.hash_bits: int = meta["hash_bits"]
        self._cached: Optional[tuple[int, StoreShard]] = None

    def shard_for_row(self, row: int) -> int:
        return row % self.shards

    def load_shard(self, shard: int) -> StoreShard:
        if self._cached is not None and self._cached[0] == shard:
            return self._cached[1]
        loaded = StoreShard(self.root, shard)
        self._cached = (shard, loaded)
        return loaded

    def lookup(self, digest: int, row: Optional[int] = None) -> str:
        """
        Resolve a digest. With a row the owning shard is read directly;
        without one every shard is searched in turn.

        Raises:
            KeyError: If no shard holds the digest
        """
        candidates = [self.shard_for_row(row)] if row is not None else range(self.shards)
        for shard in candidates:
            text = self.load_shard(shard).get(digest)
            if text is not None:
                return text
        raise KeyError(digest)
