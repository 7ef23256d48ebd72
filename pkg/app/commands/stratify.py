from pathlib import Path
from typing import Optional

import typer

from app.commands.common import (
    check_format,
    emit_report,
    parse_direction,
    replayable,
    require,
    resolve_params,
    runtime_settings,
)
from app.config import make_run_config
from mwpar.analyze.buckets import DEFAULT_BUCKET_SPEC, parse_buckets
from mwpar.analyze.metrics import Sampler, build_metric
from mwpar.analyze.scores import load_score_table
from mwpar.analyze.stratify import LengthStrata, stratify_metric
from mwpar.builder.corpus import Corpus


def stratify_command(
    ctx: typer.Context,
    corpus: Optional[Path] = typer.Option(None, "--corpus", help="Corpus directory"),
    scores: Optional[Path] = typer.Option(None, "--scores", help="Score table TSV"),
    per_pair: bool = typer.Option(False, "--per-pair", help="Score table rows are sentence pairs"),
    categorical: bool = typer.Option(False, "--categorical", help="Score table values are labels"),
    labels: Optional[str] = typer.Option(None, "--labels", help="Declared labels, comma-separated"),
    metric: Optional[str] = typer.Option(None, "--metric", help="Built-in metric: length or margin"),
    aggregate: Optional[str] = typer.Option(None, "--aggregate", help="mean, median or distribution"),
    lang: Optional[str] = typer.Option(None, "--lang", help="Restrict to one language"),
    direction: Optional[str] = typer.Option(None, "--direction", help="Restrict to one direction, e.g. en-de"),
    length_strata: Optional[str] = typer.Option(None, "--length-strata", help="Character-length edges, e.g. 0,25,50,100"),
    sample_rate: float = typer.Option(1.0, "--sample-rate", help="Uniform sample rate in (0, 1]"),
    seed: int = typer.Option(0, "--seed", help="Sampling seed"),
    buckets: str = typer.Option(DEFAULT_BUCKET_SPEC, "--buckets", help="Parallelism buckets"),
    fmt: str = typer.Option("tsv", "--format", help="tsv or json"),
    shards: Optional[int] = typer.Option(None, "--shards", help="Worker processes"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the report here instead of standard output"),
    config: Optional[Path] = typer.Option(None, "--config", help="Report manifest to replay"),
) -> None:
    """Aggregate a score table or built-in metric by parallelism bucket."""
    params = resolve_params(ctx, config, "stratify")
    corpus_dir = Path(require(params, "corpus", "--corpus"))
    fmt = check_format(params["fmt"])
    workers = runtime_settings(shards).shard_count
    data = Corpus(corpus_dir)
    label_list = [label.strip() for label in params["labels"].split(",")] if params["labels"] else None

    table = None
    inputs = [str(corpus_dir)]
    if params["scores"] is not None:
        table = load_score_table(
            params["scores"],
            per_pair=params["per_pair"],
            categorical=params["categorical"],
            labels=label_list,
            hash_bits=data.hash_bits,
        )
        inputs.append(str(params["scores"]))
    chosen = build_metric(
        name=params["metric"],
        table=table,
        lang=params["lang"],
        direction=parse_direction(params["direction"]),
        sampler=Sampler(params["sample_rate"], params["seed"]),
    )
    strata = LengthStrata.parse(params["length_strata"]) if params["length_strata"] else None
    report = stratify_metric(data, chosen, parse_buckets(params["buckets"]), params["aggregate"], strata, workers=workers)

    saved = replayable(params)
    run_config = make_run_config(
        command="stratify",
        inputs=inputs,
        buckets=saved.pop("buckets"),
        seed=saved.pop("seed"),
        params=saved,
    )
    emit_report(report, fmt, out, run_config, corpus_dir)
