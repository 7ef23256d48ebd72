"""
Parallelism buckets.

The default partition mirrors the reported table: {2}, {3-4}, {5-7}, {8+}.
Bucket specs are written the same way, e.g. ``2,3-4,5-7,8+``.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from app.core.exceptions import ConfigError


@dataclass(frozen=True)
class ParallelismBucket:
    """
    A closed range of tuple sizes; ``hi`` None means unbounded.
    """

    label: str
    lo: int
    hi: Optional[int] = None

    def __contains__(self, size: int) -> bool:
        return size >= self.lo and (self.hi is None or size <= self.hi)


def parse_buckets(spec: str) -> list[ParallelismBucket]:
    """
    Parse a bucket spec such as ``2,3-4,5-7,8+`` and check it partitions [2, ∞).

    Raises:
        ConfigError: If the spec is malformed or does not partition [2, ∞)
    """
    buckets = []
    for token in (t.strip() for t in spec.split(",")):
        try:
            if token.endswith("+"):
                buckets.append(ParallelismBucket(token, int(token[:-1]), None))
            elif "-" in token:
                lo, hi = token.split("-", 1)
                buckets.append(ParallelismBucket(token, int(lo), int(hi)))
            else:
                buckets.append(ParallelismBucket(token, int(token), int(token)))
        except ValueError as exc:
            raise ConfigError(f"Bad bucket {token!r} in {spec!r}") from exc
    validate_partition(buckets)
    return buckets


def validate_partition(buckets: Sequence[ParallelismBucket]) -> None:
    """Buckets must be ordered, contiguous, start at 2 and end unbounded."""
    if not buckets:
        raise ConfigError("At least one parallelism bucket is required")
    expected = 2
    for i, bucket in enumerate(buckets):
        if bucket.lo != expected:
            raise ConfigError(f"Bucket {bucket.label!r} starts at {bucket.lo}, expected {expected}")
        if bucket.hi is None:
            if i != len(buckets) - 1:
                raise ConfigError(f"Unbounded bucket {bucket.label!r} must come last")
            return
        if bucket.hi < bucket.lo:
            raise ConfigError(f"Bucket {bucket.label!r} is empty")
        expected = bucket.hi + 1
    raise ConfigError(f"Buckets stop at {expected - 1}; the last bucket must be unbounded (e.g. '8+')")


def bucket_index(buckets: Sequence[ParallelismBucket], size: int) -> int:
    for i, bucket in enumerate(buckets):
        if size in bucket:
            return i
    raise ValueError(f"tuple size {size} is outside every bucket")


DEFAULT_BUCKET_SPEC = "2,3-4,5-7,8+"
DEFAULT_BUCKETS = parse_buckets(DEFAULT_BUCKET_SPEC)
