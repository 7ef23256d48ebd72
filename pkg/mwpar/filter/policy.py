"""
Filter policy.
"""

import math
from dataclasses import dataclass
from typing import Literal, Optional, Union

from app.core.exceptions import ConfigError

Mode = Literal["drop", "annotate"]
Scope = Literal["monolingual", "bitext"]


def parse_threshold(value: Union[str, int, float, None]) -> Optional[int]:
    """
    Parse a max-parallelism threshold; ``inf`` (or None) means no limit.

    Raises:
        ConfigError: If the value is not a positive integer or ``inf``
    """
    if value is None:
        return None
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "none"):
            return None
        try:
            value = int(text)
        except ValueError:
            raise ConfigError(f"Max parallelism must be a positive integer or 'inf', got {value!r}") from None
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return None
        if not value.is_integer():
            raise ConfigError(f"Max parallelism must be an integer, got {value}")
        value = int(value)
    if value < 1:
        raise ConfigError(f"Max parallelism must be at least 1, got {value}")
    return value


@dataclass(frozen=True)
class FilterPolicy:
    """
    Attributes:
        max_parallelism: Largest tuple size kept; 1 keeps only untranslated
            sentences, None keeps everything
        mode: ``drop`` splits kept from dropped; ``annotate`` keeps every line
            and appends its parallelism
        scope: ``monolingual`` or ``bitext`` input
    """

    max_parallelism: Optional[int] = None
    mode: Mode = "drop"
    scope: Scope = "monolingual"

    def __post_init__(self):
        if self.max_parallelism is not None and self.max_parallelism < 1:
            raise ConfigError(f"Max parallelism must be at least 1, got {self.max_parallelism}")
        if self.mode not in ("drop", "annotate"):
            raise ConfigError(f"Unknown filter mode {self.mode!r}")
        if self.scope not in ("monolingual", "bitext"):
            raise ConfigError(f"Unknown filter scope {self.scope!r}")

    def keeps(self, parallelism: int) -> bool:
        return self.max_parallelism is None or parallelism <= self.max_parallelism

    def to_dict(self) -> dict:
        return {
            "max_parallelism": "inf" if self.max_parallelism is None else self.max_parallelism,
            "mode": self.mode,
            "scope": self.scope,
        }
