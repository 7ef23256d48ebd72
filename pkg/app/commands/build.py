from pathlib import Path
from typing import List, Optional

import typer

from app.commands.common import runtime_settings
from app.config import load_run_config, make_run_config
from app.core.exceptions import ConfigError
from mwpar.builder.pipeline import build_corpus
from mwpar.ingest.binning import BinLayout


def build_command(
    inputs: Optional[List[Path]] = typer.Option(None, "--in", help="Scored bitext TSV (repeatable; .gz/.zst accepted)"),
    out: Path = typer.Option(..., "--out", help="Corpus directory"),
    bins: Optional[str] = typer.Option(None, "--bins", help="Margin bin layout LO:HI:N"),
    hash_bits: Optional[int] = typer.Option(None, "--hash-bits", help="Digest width, 64 or 128"),
    store_shards: Optional[int] = typer.Option(None, "--store-shards", help="Sentence store shards"),
    shards: Optional[int] = typer.Option(None, "--shards", help="Worker processes (does not change outputs)"),
    reject_cap: Optional[float] = typer.Option(None, "--reject-cap", help="Maximum fraction of malformed lines"),
    config: Optional[Path] = typer.Option(None, "--config", help="Manifest or run config to replay"),
) -> None:
    """Build a multi-way parallel corpus from scored bitext."""
    values = load_run_config(config).model_dump() if config is not None else {"command": "build"}
    if values["command"] != "build":
        raise ConfigError(f"{config} holds a {values['command']!r} config, not a build config")

    if bins is not None:
        layout = BinLayout.parse(bins)
        values.update(bin_lo=layout.lo, bin_hi=layout.hi, n_bins=layout.n_bins)
    overrides = {"hash_bits": hash_bits, "store_shards": store_shards, "reject_cap": reject_cap}
    values.update({k: v for k, v in overrides.items() if v is not None})

    paths = [str(p) for p in inputs] if inputs else values.get("inputs", [])
    if not paths:
        raise ConfigError("build needs at least one --in file (or a --config listing inputs)")

    build_corpus(paths, out, make_run_config(**values), runtime_settings(shards))
