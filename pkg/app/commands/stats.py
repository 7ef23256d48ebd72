from pathlib import Path
from typing import Optional

import typer

from app.commands.common import check_format, emit_report, replayable, require, resolve_params, runtime_settings
from app.config import make_run_config
from app.core.exceptions import ConfigError
from mwpar.analyze.buckets import DEFAULT_BUCKET_SPEC, parse_buckets
from mwpar.analyze.fraction import fraction_report, fraction_with_translation, load_totals, translated_counts
from mwpar.analyze.histogram import parallelism_histogram
from mwpar.analyze.languages import language_report, per_language_stats
from mwpar.builder.corpus import Corpus


def stats_command(
    ctx: typer.Context,
    corpus: Optional[Path] = typer.Option(None, "--corpus", help="Corpus directory"),
    buckets: str = typer.Option(DEFAULT_BUCKET_SPEC, "--buckets", help="Parallelism buckets, e.g. 2,3-4,5-7,8+"),
    fmt: str = typer.Option("tsv", "--format", help="tsv or json"),
    languages: bool = typer.Option(False, "--languages", help="Per-language parallelism profile"),
    top_k: int = typer.Option(0, "--top-k", help="Also report top-k / bottom-k resource group means"),
    totals: Optional[Path] = typer.Option(None, "--totals", help="lang<TAB>count monolingual totals: report fraction translated"),
    count_mode: str = typer.Option("with-near-duplicates", "--count-mode", help="with-near-duplicates or after-dedup"),
    shards: Optional[int] = typer.Option(None, "--shards", help="Worker processes"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the report here instead of standard output"),
    config: Optional[Path] = typer.Option(None, "--config", help="Report manifest to replay"),
) -> None:
    """Parallelism histogram, per-language profile or fraction translated."""
    params = resolve_params(ctx, config, "stats")
    corpus_dir = Path(require(params, "corpus", "--corpus"))
    fmt = check_format(params["fmt"])
    if params["languages"] and params["totals"] is not None:
        raise ConfigError("Choose one of --languages and --totals")
    workers = runtime_settings(shards).shard_count
    data = Corpus(corpus_dir)

    if params["totals"] is not None:
        count_mode = params["count_mode"]
        monolingual = load_totals(params["totals"])
        fractions = fraction_with_translation(data, monolingual, count_mode)
        report = fraction_report(fractions, translated_counts(data, count_mode), monolingual, count_mode)
        inputs = [str(corpus_dir), str(params["totals"])]
    elif params["languages"]:
        report = language_report(per_language_stats(data, workers=workers), top_k=params["top_k"])
        inputs = [str(corpus_dir)]
    else:
        report = parallelism_histogram(data, parse_buckets(params["buckets"]), workers=workers).to_report()
        inputs = [str(corpus_dir)]

    saved = replayable(params)
    run_config = make_run_config(command="stats", inputs=inputs, buckets=saved.pop("buckets"), params=saved)
    emit_report(report, fmt, out, run_config, corpus_dir)
