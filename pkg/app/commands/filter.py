from pathlib import Path
from typing import Optional

import typer

from app.commands.common import replayable, require, resolve_params, runtime_settings
from app.config import make_run_config
from mwpar.builder.corpus import Corpus
from mwpar.filter.policy import FilterPolicy, parse_threshold
from mwpar.filter.runner import run_filter


def filter_command(
    ctx: typer.Context,
    corpus: Optional[Path] = typer.Option(None, "--corpus", help="Corpus directory"),
    input_path: Optional[Path] = typer.Option(None, "--in", help="Input TSV: lang<TAB>text or scored bitext"),
    scope: Optional[str] = typer.Option(None, "--scope", help="monolingual or bitext"),
    max_parallelism: Optional[str] = typer.Option(None, "--max-parallelism", help="Largest tuple size kept, or inf"),
    mode: str = typer.Option("drop", "--mode", help="drop or annotate"),
    out: Path = typer.Option(..., "--out", help="Output directory"),
    shards: Optional[int] = typer.Option(None, "--shards", help="Worker processes"),
    config: Optional[Path] = typer.Option(None, "--config", help="summary.json of a filter run to replay"),
) -> None:
    """Drop or annotate sentences and pairs by multi-way parallelism."""
    params = resolve_params(ctx, config, "filter")
    corpus_dir = Path(require(params, "corpus", "--corpus"))
    input_file = Path(require(params, "input_path", "--in"))
    policy = FilterPolicy(
        parse_threshold(str(require(params, "max_parallelism", "--max-parallelism"))),
        params["mode"],
        require(params, "scope", "--scope"),
    )
    workers = runtime_settings(shards).shard_count

    run_config = make_run_config(
        command="filter",
        inputs=[str(corpus_dir), str(input_file)],
        policy=policy.to_dict(),
        params=replayable(params),
    )
    run_filter(Corpus(corpus_dir), input_file, policy, out, workers=workers, config=run_config.to_manifest())
