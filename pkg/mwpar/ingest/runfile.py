"""
Binary run files.

A run is a sequence of length-prefixed records. Each record is laid out as::

    u32   payload length (little endian, excludes these 4 bytes)
    u8    source language id   (index into the run-local language table)
    u8    target language id
    u64   source digest        (u64 high + u64 low when the run is 128-bit)
    u64   target digest
    f64   margin
    varint + bytes   source text (UTF-8)
    varint + bytes   target text (UTF-8)

The language table and other run metadata are stored in a JSON sidecar
``<run>.meta.json`` written when the run is closed.
"""

import struct
from pathlib import Path
from typing import Any, BinaryIO, Iterator, Optional

from app.core.exceptions import DataError
from mwpar.ingest.hashing import join_digest, split_digest
from mwpar.ingest.records import HashedRecord
from mwpar.ingest.textio import read_json, write_json

MAX_LANGUAGES = 256

_LEN = struct.Struct("<I")
_LANGS = struct.Struct("<BB")
_U64 = struct.Struct("<Q")
_U128 = struct.Struct("<QQ")
_F64 = struct.Struct("<d")


def encode_varint(value: int) -> bytes:
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def decode_varint(buf, pos: int) -> tuple[int, int]:
    """Decode a LEB128 varint at ``pos``; returns (value, next position)."""
    value = 0
    shift = 0
    while True:
        byte = buf[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


def meta_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


class LanguageTable:
    """Run-local mapping between language codes and u8 ids."""

    def __init__(self, languages: Optional[list[str]] = None):
        self.languages: list[str] = list(languages or [])
        self._ids = {lang: i for i, lang in enumerate(self.languages)}

    def id_for(self, lang: str) -> int:
        lang_id = self._ids.get(lang)
        if lang_id is None:
            if len(self.languages) >= MAX_LANGUAGES:
                raise DataError(f"Run supports at most {MAX_LANGUAGES} languages")
            lang_id = len(self.languages)
            self.languages.append(lang)
            self._ids[lang] = lang_id
        return lang_id

    def __getitem__(self, lang_id: int) -> str:
        return self.languages[lang_id]


class RecordCodec:
    """Encodes and decodes record payloads for a given digest width."""

    def __init__(self, hash_bits: int, languages: LanguageTable):
        if hash_bits not in (64, 128):
            raise ValueError(f"unsupported digest width: {hash_bits}")
        self.hash_bits = hash_bits
        self.languages = languages

    def _pack_digest(self, digest: int) -> bytes:
        if self.hash_bits == 64:
            return _U64.pack(digest)
        return _U128.pack(*split_digest(digest))

    def encode(self, record: HashedRecord) -> bytes:
        src = record.src_text.encode("utf-8")
        tgt = record.tgt_text.encode("utf-8")
        payload = b"".join((
            _LANGS.pack(self.languages.id_for(record.src_lang), self.languages.id_for(record.tgt_lang)),
            self._pack_digest(record.src_digest),
            self._pack_digest(record.tgt_digest),
            _F64.pack(record.margin),
            encode_varint(len(src)),
            src,
            encode_varint(len(tgt)),
            tgt,
        ))
        return _LEN.pack(len(payload)) + payload

    def decode(self, buf, pos: int) -> tuple[HashedRecord, int]:
        """Decode the record starting at ``pos`` (at its length prefix)."""
        (length,) = _LEN.unpack_from(buf, pos)
        pos += _LEN.size
        end = pos + length
        src_id, tgt_id = _LANGS.unpack_from(buf, pos)
        pos += _LANGS.size
        if self.hash_bits == 64:
            (src_digest,) = _U64.unpack_from(buf, pos)
            (tgt_digest,) = _U64.unpack_from(buf, pos + 8)
            pos += 16
        else:
            src_digest = join_digest(*_U128.unpack_from(buf, pos))
            tgt_digest = join_digest(*_U128.unpack_from(buf, pos + 16))
            pos += 32
        (margin,) = _F64.unpack_from(buf, pos)
        pos += _F64.size
        src_len, pos = decode_varint(buf, pos)
        src_text = bytes(buf[pos:pos + src_len]).decode("utf-8")
        pos += src_len
        tgt_len, pos = decode_varint(buf, pos)
        tgt_text = bytes(buf[pos:pos + tgt_len]).decode("utf-8")
        pos += tgt_len
        if pos != end:
            raise DataError(f"Corrupt run record: length {length} does not match payload")
        record = HashedRecord(
            self.languages[src_id], self.languages[tgt_id],
            src_digest, tgt_digest, margin, src_text, tgt_text,
        )
        return record, end


class RunWriter:
    """
    Append-only writer for a run file.

    Attributes:
        path: Run file path
        count: Records written so far
        meta: Extra metadata stored in the sidecar on close
    """

    def __init__(self, path: Path, hash_bits: int, languages: Optional[LanguageTable] = None):
        self.path = Path(path)
        self.codec = RecordCodec(hash_bits, languages or LanguageTable())
        self.count = 0
        self.meta: dict[str, Any] = {}
        self._f: BinaryIO = open(self.path, "wb")

    def write(self, record: HashedRecord) -> None:
        self._f.write(self.codec.encode(record))
        self.count += 1

    def tell(self) -> int:
        return self._f.tell()

    def close(self) -> None:
        if self._f.closed:
            return
        self._f.close()
        document = {
            "hash_bits": self.codec.hash_bits,
            "languages": self.codec.languages.languages,
            "records": self.count,
            **self.meta,
        }
        write_json(meta_path(self.path), document)

    def __enter__(self) -> "RunWriter":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.close()


class RunReader:
    """
    Reader for a closed run file.

    Attributes:
        path: Run file path
        meta: Sidecar metadata
        hash_bits: Digest width of the run
        count: Number of records
    """

    def __init__(self, path: Path, buffer_size: int = 1 << 20):
        self.path = Path(path)
        self.buffer_size = buffer_size
        try:
            self.meta = read_json(meta_path(self.path))
        except (OSError, ValueError) as exc:
            raise DataError(f"Run {self.path} has no readable metadata: {exc}") from exc
        self.hash_bits = self.meta["hash_bits"]
        self.count = self.meta["records"]
        self.codec = RecordCodec(self.hash_bits, LanguageTable(self.meta["languages"]))

    @property
    def languages(self) -> list[str]:
        return self.codec.languages.languages

    def __iter__(self) -> Iterator[HashedRecord]:
        with open(self.path, "rb") as f:
            yield from self._decode_stream(f, None)

    def read_segment(self, start: int, end: int) -> Iterator[HashedRecord]:
        """Yield the records stored in the byte range [start, end)."""
        if end <= start:
            return
        with open(self.path, "rb") as f:
            f.seek(start)
            yield from self._decode_stream(f, end - start)

    def _decode_stream(self, f: BinaryIO, limit: Optional[int]) -> Iterator[HashedRecord]:
        remaining = limit
        pending = b""
        while True:
            size = self.buffer_size if remaining is None else min(self.buffer_size, remaining)
            chunk = f.read(size) if size else b""
            if remaining is not None:
                remaining -= len(chunk)
            if not chunk:
                if pending:
                    raise DataError(f"Truncated run file {self.path}")
                return
            buf = pending + chunk
            pos = 0
            while pos + _LEN.size <= len(buf):
                (length,) = _LEN.unpack_from(buf, pos)
                if pos + _LEN.size + length > len(buf):
                    break
                record, pos = self.codec.decode(buf, pos)
                yield record
            pending = buf[pos:]
