"""
Helpers shared by the subcommands.
"""

import hashlib
import logging
from pathlib import Path
from typing import Any, Optional

import orjson
import typer

from app.config import RunConfig, Settings, load_run_config, settings
from app.core.exceptions import ConfigError
from mwpar.analyze.reports import Report
from mwpar.ingest.textio import write_json

logger = logging.getLogger("mwpar.commands")

REPORT_FORMATS = ("tsv", "json")

# Options that never change outputs, or name where outputs go; not replayed.
EXECUTION_OPTIONS = ("out", "shards", "config")

RUNS_DIR = "runs"


def runtime_settings(shards: Optional[int]) -> Settings:
    """Environment settings with the shard count overridden from the command line."""
    if shards is None:
        return settings
    if shards < 1:
        raise ConfigError(f"--shards must be positive, got {shards}")
    return settings.model_copy(update={"shard_count": shards})


def _given(ctx: typer.Context, name: str) -> bool:
    source = ctx.get_parameter_source(name)
    return source is not None and source.name not in ("DEFAULT", "DEFAULT_MAP")


def resolve_params(ctx: typer.Context, config: Optional[Path], command: str) -> dict[str, Any]:
    """
    Parameter values of this invocation.

    With ``--config``, every option not given on the command line takes the
    value saved in that manifest.

    Raises:
        ConfigError: If the manifest belongs to another subcommand
    """
    params = dict(ctx.params)
    if config is None:
        return params
    saved = load_run_config(config)
    if saved.command != command:
        raise ConfigError(f"{config} holds a {saved.command!r} config, not a {command!r} config")

    values = dict(saved.params)
    if saved.buckets is not None:
        values["buckets"] = saved.buckets
    if saved.seed is not None:
        values["seed"] = saved.seed
    for name, value in values.items():
        if name in params and name not in EXECUTION_OPTIONS and not _given(ctx, name):
            params[name] = value
    return params


def require(params: dict[str, Any], name: str, flag: str) -> Any:
    if params.get(name) is None:
        raise ConfigError(f"Missing option {flag} (give it or a --config that holds it)")
    return params[name]


def replayable(params: dict[str, Any]) -> dict[str, Any]:
    """The output-affecting parameters, JSON-ready, as saved for replay."""
    return {
        name: str(value) if isinstance(value, Path) else value
        for name, value in params.items()
        if name not in EXECUTION_OPTIONS and value is not None
    }


def check_format(fmt: str) -> str:
    if fmt not in REPORT_FORMATS:
        raise ConfigError(f"--format must be one of {', '.join(REPORT_FORMATS)}, got {fmt!r}")
    return fmt


def parse_direction(direction: Optional[str]) -> Optional[tuple[str, str]]:
    """``src-tgt`` → (src, tgt)."""
    if direction is None:
        return None
    parts = direction.split("-")
    if len(parts) != 2 or not all(parts) or parts[0] == parts[1]:
        raise ConfigError(f"--direction must look like 'en-de', got {direction!r}")
    return parts[0], parts[1]


def report_manifest_path(config: RunConfig, out: Optional[Path], corpus: Path) -> Path:
    """
    ``<out>.manifest.json`` next to a report file; for reports sent to
    standard output, ``<corpus>/runs/<command>-<digest>.manifest.json``
    keyed by the run config.
    """
    if out is not None:
        return out.with_name(out.name + ".manifest.json")
    digest = hashlib.sha256(orjson.dumps(config.to_manifest(), option=orjson.OPT_SORT_KEYS)).hexdigest()[:16]
    return corpus / RUNS_DIR / f"{config.command}-{digest}.manifest.json"


def emit_report(report: Report, fmt: str, out: Optional[Path], config: RunConfig, corpus: Path) -> None:
    """
    Write a report to ``out`` or to standard output, and its manifest
    (run config and report summary) to ``report_manifest_path``.
    """
    data = report.render(fmt)
    if out is None:
        typer.echo(data.decode("utf-8"), nl=False)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(data)

    manifest = report_manifest_path(config, out, corpus)
    try:
        manifest.parent.mkdir(parents=True, exist_ok=True)
        write_json(manifest, {"config": config.to_manifest(), "summary": report.summary})
    except OSError as exc:
        if out is not None:
            raise
        logger.warning(f"Could not write run manifest {manifest}: {exc}")
        return
    logger.info(f"Run manifest written to {manifest}")
