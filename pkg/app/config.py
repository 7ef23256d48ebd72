"""
Application Configuration Settings.

This module defines the configuration settings for the mwpar toolkit.
Settings are loaded from environment variables or .env file using Pydantic.
Per-run parameters live in RunConfig, which is written into every manifest
so a run can be replayed exactly.
"""

from pathlib import Path
from typing import Annotated, Any, Literal, Optional

import yaml
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.core.exceptions import ConfigError

HASH_WIDTHS = (64, 128)


def check_hash_bits(value: int) -> int:
    if value not in HASH_WIDTHS:
        raise ValueError(f"hash_bits must be 64 or 128, got {value}")
    return value


HashBits = Annotated[int, AfterValidator(check_hash_bits)]


class Settings(BaseSettings):
    """
    Toolkit settings loaded from environment variables.

    Uses Pydantic Settings to validate and load configuration from:
    - Environment variables
    - .env file in the project root

    Settings are organized into groups:
    - Application settings (name, version, debug mode)
    - Logging settings (level, file path)
    - Execution settings (shard count, memory budget, temp dir); these never change outputs
    - Pipeline defaults (bin layout, hash width, store shards, reject cap)
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application settings
    app_name: str = "mwpar"
    app_version: str = "0.1.0"
    debug: bool = False

    # Logging settings
    log_level: str = "INFO"
    log_file: Optional[str] = None
    log_every: int = 1_000_000

    # Execution settings
    shard_count: int = Field(default=1, ge=1)
    memory_budget_mb: int = Field(default=4096, ge=64)
    tmp_dir: Optional[str] = None

    # Pipeline defaults
    block_records: int = Field(default=100_000, ge=1)
    store_shards: int = Field(default=16, ge=1)
    bin_lo: float = 1.0
    bin_hi: float = 1.5
    n_bins: int = Field(default=500, ge=1)
    hash_bits: HashBits = 64
    reject_cap: float = Field(default=0.05, ge=0.0, le=1.0)


class RunConfig(BaseModel):
    """
    Output-affecting parameters of one subcommand invocation.

    Serialized verbatim into ``manifest.json["config"]``. Execution knobs
    (shard count, memory budget, block size) are absent; outputs do not
    depend on them.
    """

    model_config = ConfigDict(extra="forbid")

    command: Literal["build", "stats", "stratify", "filter", "gen"]
    inputs: list[str] = Field(default_factory=list)
    output: Optional[str] = None

    # build
    bin_lo: Optional[float] = None
    bin_hi: Optional[float] = None
    n_bins: Optional[int] = Field(default=None, ge=1)
    hash_bits: Optional[HashBits] = None
    store_shards: Optional[int] = Field(default=None, ge=1)
    reject_cap: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    # stats / stratify
    buckets: Optional[str] = None
    params: dict[str, Any] = Field(default_factory=dict)

    # filter
    policy: Optional[dict[str, Any]] = None

    # gen / sampling
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _check_bins(self) -> "RunConfig":
        if self.bin_lo is not None and self.bin_hi is not None and self.bin_lo >= self.bin_hi:
            raise ValueError(f"bin_lo ({self.bin_lo}) must be below bin_hi ({self.bin_hi})")
        return self

    def with_defaults(self, defaults: "Settings") -> "RunConfig":
        """Fill unset build parameters from the environment settings."""
        if self.command != "build":
            return self
        updates = {
            name: getattr(defaults, name)
            for name in ("bin_lo", "bin_hi", "n_bins", "hash_bits", "store_shards", "reject_cap")
            if getattr(self, name) is None
        }
        return make_run_config(**{**self.model_dump(), **updates})

    def to_manifest(self) -> dict[str, Any]:
        """Manifest form; the output location is implied by where the manifest lives."""
        return self.model_dump(mode="json", exclude_none=True, exclude={"output"})


def make_run_config(**values: Any) -> RunConfig:
    """Build a RunConfig, turning validation failures into ConfigError."""
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise ConfigError(f"Invalid run configuration: {exc}") from exc


def load_run_config(path: Path) -> RunConfig:
    """
    Load a RunConfig for replay.

    Accepts either a corpus/report manifest (the ``config`` key is used) or
    a bare RunConfig document. JSON is valid YAML, so both formats load.

    Args:
        path: Manifest or config file

    Returns:
        RunConfig: Parsed configuration

    Raises:
        ConfigError: If the file is missing, unparsable or invalid
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"Cannot read config {path}: {exc}") from exc

    if not isinstance(document, dict):
        raise ConfigError(f"Config {path} is not a mapping")
    if isinstance(document.get("config"), dict):
        document = document["config"]
    return make_run_config(**document)


settings = Settings()
