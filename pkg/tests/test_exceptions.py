"""
Tests for Custom Exception Classes.

This module tests the exception hierarchy and the exit codes it carries.
"""

import pickle

import pytest

from app.core.exceptions import (
    EXIT_DATA,
    EXIT_RESOURCE,
    EXIT_USAGE,
    ConfigError,
    DataConsistencyError,
    DataError,
    MWParException,
    RejectCapExceeded,
    ResourceExhaustedError,
    RowOverflowError,
    StoreCorruptionError,
)


def test_base_exception_default():
    """Test MWParException with the default exit code."""
    exc = MWParException("Test error message")

    assert exc.message == "Test error message"
    assert exc.exit_code == EXIT_DATA
    assert str(exc) == "Test error message"


def test_base_exception_custom_code():
    """Test MWParException with a custom exit code."""
    assert MWParException("x", exit_code=EXIT_RESOURCE).exit_code == 3


@pytest.mark.parametrize("exc, parent, code", [
    (ConfigError("bad flag"), MWParException, EXIT_USAGE),
    (DataError("bad line"), MWParException, EXIT_DATA),
    (RejectCapExceeded(10, 100, 0.05), DataError, EXIT_DATA),
    (DataConsistencyError("mismatch", {"lang": "en"}), DataError, EXIT_DATA),
    (StoreCorruptionError("en", 0xBEEF), DataError, EXIT_DATA),
    (ResourceExhaustedError("disk full"), MWParException, EXIT_RESOURCE),
    (RowOverflowError(2**32), ResourceExhaustedError, EXIT_RESOURCE),
])
def test_exception_inheritance(exc, parent, code):
    """Test that all custom exceptions inherit properly and carry their exit code."""
    assert isinstance(exc, parent)
    assert isinstance(exc, Exception)
    assert exc.exit_code == code


def test_reject_cap_message():
    """Test that the reject cap message states both fractions."""
    exc = RejectCapExceeded(10, 100, 0.05)

    assert exc.message == "Rejected 10 of 100 lines (10.00%), above cap 5.00%"


def test_store_corruption_message():
    """Test the store corruption message names language and digest."""
    assert StoreCorruptionError("en", 255).message == "Sentence store has no text for (en, 0xff)"


@pytest.mark.parametrize("exc", [
    RejectCapExceeded(3, 4, 0.5),
    DataConsistencyError("mismatch", {"lang": "en", "total": 1}),
    StoreCorruptionError("de", 7),
    RowOverflowError(5),
])
def test_exceptions_survive_pickling(exc):
    """Test that exceptions raised in worker processes round-trip through pickle."""
    restored = pickle.loads(pickle.dumps(exc))

    assert type(restored) is type(exc)
    assert restored.message == exc.message
    assert restored.exit_code == exc.exit_code
    assert vars(restored) == vars(exc)
