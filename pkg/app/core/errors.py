"""
Exit-code translation for the command line.

Every failure leaving a subcommand passes through ``exit_code_for``:
- mwpar exceptions (MWParException and subclasses) exit with their configured code
- click usage errors exit with 1
- memory and disk exhaustion exit with 3
- anything else is logged with its traceback and exits with 2
"""

import errno
import logging

import typer

from app.core.exceptions import EXIT_DATA, EXIT_RESOURCE, EXIT_USAGE, MWParException

logger = logging.getLogger("mwpar")

# Taken from typer's own exports: typer may raise from a bundled copy of click.
_ABORT = typer.Abort
_CLICK_ERROR = next(c for c in typer.BadParameter.__mro__ if c.__name__ == "ClickException")


def exit_code_for(exc: BaseException) -> int:
    """
    Map an exception to a process exit code and log it.

    Args:
        exc: Exception raised by a subcommand

    Returns:
        int: 1 usage, 2 data, 3 resource exhaustion
    """
    if isinstance(exc, MWParException):
        logger.error(f"{exc.__class__.__name__}: {exc.message}")
        return exc.exit_code
    if isinstance(exc, _ABORT):
        logger.error("Aborted")
        return EXIT_USAGE
    if isinstance(exc, _CLICK_ERROR):
        logger.error(f"Usage error: {exc.format_message()}")
        return EXIT_USAGE
    if isinstance(exc, MemoryError):
        logger.error("Out of memory")
        return EXIT_RESOURCE
    if isinstance(exc, OSError) and exc.errno == errno.ENOSPC:
        logger.error(f"No space left on device: {exc.filename or ''}")
        return EXIT_RESOURCE
    if isinstance(exc, (FileNotFoundError, IsADirectoryError, PermissionError)):
        logger.error(f"Cannot access {exc.filename}: {exc.strerror}")
        return EXIT_DATA
    logger.error(f"Unexpected error: {str(exc)}", exc_info=exc)
    return EXIT_DATA
