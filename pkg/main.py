"""
mwpar - Main Command-Line Entry Point.

This module creates and configures the typer application for the mwpar toolkit.
It sets up:
- Logging (level and optional rotating log file) before any subcommand runs
- The subcommands: build, stats, stratify, filter and gen
- Exit-code translation: 0 success, 1 usage, 2 data, 3 resource exhaustion
"""

import sys
from typing import Optional, Sequence

import typer

from app.commands import build, filter, gen, stats, stratify
from app.config import settings
from app.core.errors import exit_code_for
from app.logging_config import setup_logging


def create_app() -> typer.Typer:
    """
    Create and configure the typer application.

    Returns:
        typer.Typer: Application with every subcommand registered
    """

    app = typer.Typer(
        name=settings.app_name,
        help="Build, analyse and filter multi-way parallel corpora.",
        add_completion=False,
        no_args_is_help=True,
    )

    @app.callback()
    def main(
        log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
        log_file: Optional[str] = typer.Option(None, "--log-file", help="Also log to this rotating file"),
    ) -> None:
        """Multi-way parallel corpus toolkit."""
        if log_level is not None and log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise typer.BadParameter(f"unknown log level {log_level!r}", param_hint="--log-level")
        logger = setup_logging(log_level, log_file)
        logger.debug(f"{settings.app_name} v{settings.app_version}")

    app.command("build")(build.build_command)
    app.command("stats")(stats.stats_command)
    app.command("stratify")(stratify.stratify_command)
    app.command("filter")(filter.filter_command)
    app.command("gen")(gen.gen_command)

    return app


app = create_app()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        int: Process exit code
    """
    command = typer.main.get_command(app)
    args = list(argv) if argv is not None else sys.argv[1:]
    try:
        result = command.main(args=args, prog_name=settings.app_name, standalone_mode=False)
    except Exception as exc:
        return exit_code_for(exc)
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run())
