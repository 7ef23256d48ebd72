"""
Common machinery of parallelism filters.
"""

from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Generic, Iterable, Iterator, NamedTuple, TypeVar, Union

from app.core.exceptions import ConfigError
from mwpar.builder.corpus import Corpus
from mwpar.filter.lookup import ParallelismLookup
from mwpar.filter.policy import FilterPolicy
from mwpar.ingest.records import RejectRecord

T = TypeVar("T")


class Decision(NamedTuple):
    item: Any
    parallelism: int
    kept: bool
    group: str


@dataclass
class FilterSummary:
    """
    Exact filter accounting.

    ``kept + dropped`` equals the number of well-formed input items; rejected
    lines (file runs only) are counted separately.
    """

    kept: int = 0
    dropped: int = 0
    rejected: int = 0
    per_group: dict = field(default_factory=dict)
    distribution: Counter = field(default_factory=Counter)

    def add(self, decision: Decision) -> None:
        counts = self.per_group.setdefault(decision.group, {"kept": 0, "dropped": 0})
        if decision.kept:
            self.kept += 1
            counts["kept"] += 1
        else:
            self.dropped += 1
            counts["dropped"] += 1
        self.distribution[decision.parallelism] += 1

    def merge(self, other: "FilterSummary") -> "FilterSummary":
        merged = FilterSummary(
            self.kept + other.kept,
            self.dropped + other.dropped,
            self.rejected + other.rejected,
            {g: dict(c) for g, c in self.per_group.items()},
            self.distribution + other.distribution,
        )
        for group, counts in other.per_group.items():
            mine = merged.per_group.setdefault(group, {"kept": 0, "dropped": 0})
            mine["kept"] += counts["kept"]
            mine["dropped"] += counts["dropped"]
        return merged

    @property
    def total(self) -> int:
        return self.kept + self.dropped

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "kept": self.kept,
            "dropped": self.dropped,
            "rejected": self.rejected,
            "per_group": dict(sorted(self.per_group.items())),
            "parallelism_distribution": {str(p): n for p, n in sorted(self.distribution.items())},
        }


@dataclass
class FilterOutcome(Generic[T]):
    """
    In-memory result of a filter run.

    In drop mode ``kept`` and ``dropped`` partition the input; in annotate
    mode ``annotated`` holds every input item with its parallelism.
    """

    kept: list[T] = field(default_factory=list)
    dropped: list[T] = field(default_factory=list)
    annotated: list[tuple[T, int]] = field(default_factory=list)
    summary: FilterSummary = field(default_factory=FilterSummary)


def as_lookup(source: Union[Corpus, ParallelismLookup]) -> ParallelismLookup:
    if isinstance(source, ParallelismLookup):
        return source
    return ParallelismLookup.from_corpus(source)


class ParallelismFilter(ABC, Generic[T]):
    """Abstract base class for filters deciding by multi-way parallelism."""

    scope: str = ""

    def __init__(self, lookup: ParallelismLookup, policy: FilterPolicy):
        if policy.scope != self.scope:
            raise ConfigError(f"{type(self).__name__} needs a {self.scope!r} policy, got {policy.scope!r}")
        self.lookup = lookup
        self.policy = policy

    @abstractmethod
    def parallelism(self, item: T) -> int:
        """Multi-way parallelism of an input item."""
        pass

    @abstractmethod
    def group(self, item: T) -> str:
        """Summary group of an input item (language or direction)."""
        pass

    @abstractmethod
    def parse_line(self, line: str, line_no: int) -> Union[T, RejectRecord]:
        """
        Parse one input line.

        Args:
            line: Raw line without its newline
            line_no: 1-based line number

        Returns:
            Parsed item or RejectRecord
        """
        pass

    def decide(self, item: T) -> Decision:
        p = self.parallelism(item)
        return Decision(item, p, self.policy.keeps(p), self.group(item))

    def decisions(self, items: Iterable[T]) -> Iterator[Decision]:
        for item in items:
            yield self.decide(item)

    def collect(self, items: Iterable[T]) -> FilterOutcome[T]:
        outcome: FilterOutcome[T] = FilterOutcome()
        annotate = self.policy.mode == "annotate"
        for decision in self.decisions(items):
            outcome.summary.add(decision)
            if annotate:
                outcome.annotated.append((decision.item, decision.parallelism))
            elif decision.kept:
                outcome.kept.append(decision.item)
            else:
                outcome.dropped.append(decision.item)
        return outcome
