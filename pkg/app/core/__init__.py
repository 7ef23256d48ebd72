from app.core.exceptions import (
    MWParException,
    ConfigError,
    DataError,
    DataConsistencyError,
    RejectCapExceeded,
    ResourceExhaustedError,
    RowOverflowError,
    StoreCorruptionError,
)

__all__ = [
    "MWParException",
    "ConfigError",
    "DataError",
    "DataConsistencyError",
    "RejectCapExceeded",
    "ResourceExhaustedError",
    "RowOverflowError",
    "StoreCorruptionError",
]
