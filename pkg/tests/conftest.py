"""
Pytest Configuration and Shared Fixtures.

This module provides shared fixtures and configuration for all tests:
small hand-written bitext, runtime settings sized for tests, and a
factory that builds a corpus directory from lines.
"""

from pathlib import Path
from typing import Callable, Optional, Sequence

import pytest

from app.config import Settings, make_run_config
from mwpar.builder.pipeline import BuildResult, build_corpus
from mwpar.builder.tuples import Member, TranslationTuple
from mwpar.ingest.hashing import hash_sentence
from mwpar.synth.generator import generate, make_synth_config, write_planted


# (en:"hello", es:"hola") then (en:"hello", pt:"olá") combine into one 3-way tuple
THREE_LANGUAGE_LINES = [
    "en\tes\thello\thola\t1.2",
    "en\tpt\thello\tolá\t1.1",
]


def tuple_of(row: int, texts: dict[str, str], score: float = 1.2) -> TranslationTuple:
    """In-memory tuple with every member at the same score."""
    return TranslationTuple(
        row,
        {lang: Member(hash_sentence(text), text, score) for lang, text in sorted(texts.items())},
    )


def write_lines(path: Path, lines: Sequence[str]) -> Path:
    """Write lines with LF endings and return the path."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.writelines(line + "\n" for line in lines)
    return path


@pytest.fixture
def runtime():
    """
    Execution settings for tests.

    Returns:
        Settings: Single worker, four store shards, frequent progress logs
    """
    return Settings(shard_count=1, store_shards=4, memory_budget_mb=256, log_every=1000)


@pytest.fixture
def bitext_file(tmp_path) -> Callable[..., Path]:
    """
    Factory writing bitext lines to a file under tmp_path.

    Returns:
        Callable: (lines, name="bitext.tsv") -> Path
    """

    def _write(lines: Sequence[str], name: str = "bitext.tsv") -> Path:
        return write_lines(tmp_path / "inputs" / name, lines)

    return _write


@pytest.fixture
def build(tmp_path, runtime, bitext_file) -> Callable[..., BuildResult]:
    """
    Factory building a corpus from bitext lines.

    Returns:
        Callable: (lines, name="corpus", shards=None, **config) -> BuildResult
    """

    def _build(lines: Sequence[str], name: str = "corpus", shards: Optional[int] = None, **config) -> BuildResult:
        path = bitext_file(lines, f"{name}.tsv")
        run_runtime = runtime if shards is None else runtime.model_copy(update={"shard_count": shards})
        run_config = make_run_config(command="build", **config)
        return build_corpus([path], tmp_path / name, run_config, run_runtime)

    return _build


@pytest.fixture
def three_language_corpus(build) -> BuildResult:
    """Corpus built from the two-pair hello/hola/olá example."""
    return build(THREE_LANGUAGE_LINES, name="hello")


@pytest.fixture(scope="session")
def planted_dir(tmp_path_factory) -> Path:
    """
    A generated bitext with planted ground truth, shared by the session.

    Returns:
        Path: Directory holding bitext.tsv, monolingual_totals.tsv and ground_truth.json
    """
    config = make_synth_config(
        seed=11,
        tuples=400,
        languages=8,
        sizes="2:0.5,3:0.25,4:0.1,5:0.1,7:0.05",
        near_dup_rate=0.1,
        redundant_rate=0.2,
        corrupt_rate=0.02,
    )
    return write_planted(generate(config), tmp_path_factory.mktemp("planted"))


@pytest.fixture(scope="session")
def planted_corpus(planted_dir, tmp_path_factory) -> BuildResult:
    """The planted bitext built into a corpus with default parameters."""
    runtime = Settings(shard_count=1, store_shards=4, memory_budget_mb=256)
    return build_corpus([planted_dir / "bitext.tsv"], tmp_path_factory.mktemp("planted-corpus"), runtime=runtime)
