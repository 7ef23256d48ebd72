"""
Custom Exceptions for mwpar.

This module defines exception classes for handling errors across the
ingest, build, analysis and filter stages. All exceptions inherit from
MWParException, which carries the process exit code the CLI reports for it.

Exit codes:
    1: usage / configuration error
    2: data error
    3: resource exhaustion
"""

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RESOURCE = 3


class MWParException(Exception):
    """
    Base exception for mwpar.

    All custom exceptions should inherit from this class. It provides
    a consistent interface with error messages and exit codes.

    Attributes:
        message: Human-readable error message
        exit_code: Process exit code for the error
    """

    def __init__(self, message: str, exit_code: int = EXIT_DATA):
        """
        Initialize mwpar exception.

        Args:
            message: Human-readable error message
            exit_code: Process exit code (default: 2)
        """
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class ConfigError(MWParException):
    """
    Raised for invalid settings, flags, bucket specs or policies.
    """

    def __init__(self, message: str):
        super().__init__(message, exit_code=EXIT_USAGE)


class DataError(MWParException):
    """
    Raised when input data cannot be processed.

    Used for malformed score tables, unreadable inputs and
    inconsistent corpora.
    """

    def __init__(self, message: str):
        super().__init__(message, exit_code=EXIT_DATA)


class RejectCapExceeded(DataError):
    """
    Raised when the share of rejected bitext lines exceeds the configured cap.

    Attributes:
        rejected: Number of rejected lines
        total: Number of lines read
        cap: Configured maximum reject fraction
    """

    def __init__(self, rejected: int, total: int, cap: float):
        self.rejected = rejected
        self.total = total
        self.cap = cap
        super().__init__(
            f"Rejected {rejected} of {total} lines ({rejected / max(total, 1):.2%}), above cap {cap:.2%}"
        )

    def __reduce__(self):
        return (self.__class__, (self.rejected, self.total, self.cap))


class DataConsistencyError(DataError):
    """
    Raised when two data sources contradict each other.

    Attributes:
        details: Offending keys with their conflicting values
    """

    def __init__(self, message: str, details: dict | None = None):
        self.details = details or {}
        super().__init__(message)

    def __reduce__(self):
        return (self.__class__, (self.message, self.details))


class StoreCorruptionError(DataError):
    """
    Raised when a digest cannot be resolved back to its sentence.

    Attributes:
        lang: Language of the unresolved sentence
        digest: Unresolved content digest
    """

    def __init__(self, lang: str, digest: int):
        self.lang = lang
        self.digest = digest
        super().__init__(f"Sentence store has no text for ({lang}, {digest:#x})")

    def __reduce__(self):
        return (self.__class__, (self.lang, self.digest))


class ResourceExhaustedError(MWParException):
    """
    Raised when disk space or memory runs out.
    """

    def __init__(self, message: str):
        super().__init__(message, exit_code=EXIT_RESOURCE)


class RowOverflowError(ResourceExhaustedError):
    """
    Raised when the tuple table would exceed the row id space.
    """

    def __init__(self, num_rows: int):
        self.num_rows = num_rows
        super().__init__(f"Tuple table row count overflow at {num_rows} rows")

    def __reduce__(self):
        return (self.__class__, (self.num_rows,))
