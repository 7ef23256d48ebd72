"""
Text file access with compression autodetected from the extension.

Input lines are decoded with ``surrogateescape``: bytes that are not valid
UTF-8 survive as lone surrogates, so each line can be checked on its own
(``is_valid_utf8``) and written back unchanged.
"""

import gzip
import hashlib
from pathlib import Path
from typing import IO, Any, Iterator, Union

import orjson
import zstandard as zstd

from app.core.exceptions import DataError

PathLike = Union[str, Path]

INPUT_ERRORS = "surrogateescape"


def open_text(path: PathLike, mode: str = "rt", errors: str = "strict") -> IO[str]:
    """
    Open a text file, transparently handling ``.gz`` and ``.zst``.

    Args:
        path: File path
        mode: ``"rt"``, ``"wt"`` or ``"at"``
        errors: Codec error handler

    Returns:
        IO[str]: UTF-8 text stream with ``"\\n"`` line endings preserved
    """
    name = str(path)
    if name.endswith(".gz"):
        return gzip.open(name, mode, encoding="utf-8", errors=errors, newline="\n")
    if name.endswith(".zst"):
        if "r" in mode:
            dctx = zstd.ZstdDecompressor(max_window_size=2**31)
            return zstd.open(name, mode, dctx=dctx, encoding="utf-8", errors=errors, newline="\n")
        return zstd.open(name, mode, encoding="utf-8", errors=errors, newline="\n")
    return open(name, mode, encoding="utf-8", errors=errors, newline="\n")


def iter_lines(path: PathLike, strict: bool = False) -> Iterator[str]:
    """
    Yield lines without their trailing newline.

    Args:
        path: Input file
        strict: Raise DataError on the first line that is not valid UTF-8
            instead of yielding it with escaped bytes
    """
    with open_text(path, "rt", errors=INPUT_ERRORS) as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if strict and not is_valid_utf8(line):
                raise DataError(f"{path}:{line_no}: invalid UTF-8: {printable(line)!r}")
            yield line


def is_valid_utf8(line: str) -> bool:
    """False if the line carries bytes escaped by ``surrogateescape``."""
    try:
        line.encode("utf-8")
    except UnicodeEncodeError:
        return False
    return True


def printable(line: str) -> str:
    """Show escaped bytes as ``\\xNN`` so the line can go to a strict UTF-8 stream."""
    return line.encode("utf-8", INPUT_ERRORS).decode("utf-8", "backslashreplace")


def file_sha256(path: PathLike, chunk_size: int = 1 << 20) -> str:
    """Checksum a file as stored on disk (compressed bytes for compressed inputs)."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        while chunk := f.read(chunk_size):
            digest.update(chunk)
    return digest.hexdigest()


def write_json(path: PathLike, document: Any) -> None:
    """Write JSON with sorted keys and stable formatting, so reruns are byte-identical."""
    with open(path, "wb") as f:
        f.write(orjson.dumps(document, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS))
        f.write(b"\n")


def read_json(path: PathLike) -> Any:
    with open(path, "rb") as f:
        return orjson.loads(f.read())
