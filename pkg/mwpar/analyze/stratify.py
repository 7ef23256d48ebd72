"""
Metrics stratified by multi-way parallelism (and optionally sentence length).
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import partial
from typing import Iterator, Literal, Optional, Sequence

import numpy as np

from app.core.exceptions import ConfigError
from mwpar.analyze.buckets import DEFAULT_BUCKETS, ParallelismBucket, bucket_index, validate_partition
from mwpar.analyze.metrics import Metric
from mwpar.analyze.reports import Report
from mwpar.analyze.sharding import CorpusLike, map_tuples
from mwpar.builder.tuples import TranslationTuple

Aggregate = Literal["mean", "median", "distribution"]

QUANTILES = (0.10, 0.25, 0.50, 0.75, 0.90)
QUANTILE_COLUMNS = ["p10", "p25", "p50", "p75", "p90"]
DEFAULT_LENGTH_STRATA = (0, 25, 50, 100)


@dataclass(frozen=True)
class LengthStrata:
    """
    Character-length bins ``[e0, e1), [e1, e2), …, [ek, ∞)``.
    """

    edges: tuple[float, ...] = DEFAULT_LENGTH_STRATA

    def __post_init__(self):
        if not self.edges or self.edges[0] != 0:
            raise ConfigError(f"Length strata must start at 0, got {list(self.edges)}")
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise ConfigError(f"Length strata edges must increase, got {list(self.edges)}")

    @classmethod
    def parse(cls, spec: str) -> "LengthStrata":
        try:
            return cls(tuple(float(e) for e in spec.split(",")))
        except ValueError as exc:
            raise ConfigError(f"Bad length strata {spec!r}; expected e.g. 0,25,50,100") from exc

    @property
    def labels(self) -> list[str]:
        def fmt(x: float) -> str:
            return str(int(x)) if float(x).is_integer() else str(x)

        labels = [f"{fmt(a)}-{fmt(b)}" for a, b in zip(self.edges, self.edges[1:])]
        return labels + [f"{fmt(self.edges[-1])}+"]

    def index(self, length: float) -> int:
        return int(np.searchsorted(self.edges, length, side="right")) - 1


@dataclass
class StratifyPartial:
    """Per-shard aggregate: observed values per cell plus coverage counts."""

    values: dict = field(default_factory=dict)
    scored: int = 0
    missing: int = 0

    def merge(self, other: "StratifyPartial") -> "StratifyPartial":
        merged = StratifyPartial(dict(self.values), self.scored + other.scored, self.missing + other.missing)
        for cell, vals in other.values.items():
            mine = merged.values.get(cell)
            if mine is None:
                merged.values[cell] = vals
            elif isinstance(vals, Counter):
                merged.values[cell] = mine + vals
            else:
                merged.values[cell] = np.sort(np.concatenate([mine, vals]), kind="stable")
        return merged


def _merge_partials(a: StratifyPartial, b: StratifyPartial) -> StratifyPartial:
    return a.merge(b)


def _stratify_shard(
    tuples: Iterator[TranslationTuple],
    metric: Metric,
    buckets: Sequence[ParallelismBucket],
    strata: Optional[LengthStrata],
) -> StratifyPartial:
    categorical = metric.kind == "categorical"
    numeric: dict[tuple[int, int], list[float]] = {}
    labels: dict[tuple[int, int], Counter] = {}
    partial_ = StratifyPartial()

    for t in tuples:
        b = bucket_index(buckets, t.size)
        for obs in metric.observe(t):
            if obs.value is None:
                partial_.missing += 1
                continue
            partial_.scored += 1
            cell = (b, strata.index(obs.length) if strata else 0)
            if categorical:
                labels.setdefault(cell, Counter())[obs.value] += 1
            else:
                numeric.setdefault(cell, []).append(float(obs.value))

    partial_.values.update(labels)
    partial_.values.update({cell: np.sort(np.asarray(vals, dtype=np.float64)) for cell, vals in numeric.items()})
    return partial_


def _numeric_cell(values: Optional[np.ndarray], aggregate: Aggregate) -> dict:
    n = 0 if values is None else len(values)
    if aggregate == "distribution":
        if not n:
            return {"n": 0, **{c: None for c in QUANTILE_COLUMNS}}
        qs = np.quantile(values, QUANTILES)
        return {"n": n, **{c: float(q) for c, q in zip(QUANTILE_COLUMNS, qs)}}
    if not n:
        return {"n": 0, "value": None}
    if aggregate == "mean":
        # fsum is exactly rounded, so the mean does not depend on shard order
        return {"n": n, "value": math.fsum(values.tolist()) / n}
    return {"n": n, "value": float(np.median(values))}


def stratify_metric(
    corpus: CorpusLike,
    metric: Metric,
    buckets: Sequence[ParallelismBucket] = DEFAULT_BUCKETS,
    aggregate: Optional[Aggregate] = None,
    length_strata: Optional[LengthStrata] = None,
    workers: int = 1,
) -> Report:
    """
    Aggregate a metric per parallelism bucket (and length stratum).

    Numeric metrics give a mean, a median or the p10–p90 quantiles per cell;
    categorical metrics give the percentage of each label per cell. Unscored
    sentences are excluded from aggregates and reported as coverage.

    Args:
        corpus: Corpus or iterable of tuples
        metric: Metric to observe
        buckets: Partition of [2, ∞)
        aggregate: ``mean`` | ``median`` | ``distribution``; defaults to mean
            for numeric and distribution for categorical metrics
        length_strata: Optional character-length strata
        workers: Worker processes for a sharded corpus scan

    Returns:
        Report with one row per cell (per label, for categorical metrics)

    Raises:
        ConfigError: If the buckets are invalid or the aggregate does not fit the metric kind
    """
    validate_partition(buckets)
    categorical = metric.kind == "categorical"
    if aggregate is None:
        aggregate = "distribution" if categorical else "mean"
    if aggregate not in ("mean", "median", "distribution"):
        raise ConfigError(f"Unknown aggregate {aggregate!r}")
    if categorical and aggregate != "distribution":
        raise ConfigError(f"A categorical table cannot be aggregated with {aggregate!r}; use 'distribution'")

    mapper = partial(_stratify_shard, metric=metric, buckets=list(buckets), strata=length_strata)
    result = map_tuples(corpus, mapper, _merge_partials, workers)

    stratum_labels = length_strata.labels if length_strata else [None]
    label_set = list(metric.table.labels) if categorical else []
    if categorical:
        seen = set()
        for counts in result.values.values():
            seen.update(counts)
        label_set += sorted(seen - set(label_set))

    rows = []
    for b, bucket in enumerate(buckets):
        for s, stratum in enumerate(stratum_labels):
            head = {"bucket": bucket.label}
            if length_strata:
                head["stratum"] = stratum
            cell = result.values.get((b, s))
            if categorical:
                total = sum(cell.values()) if cell else 0
                for label in label_set:
                    count = cell.get(label, 0) if cell else 0
                    rows.append({**head, "label": label, "n": count, "pct": 100.0 * count / total if total else None})
            else:
                rows.append({**head, **_numeric_cell(cell, aggregate)})

    columns = ["bucket"] + (["stratum"] if length_strata else [])
    if categorical:
        columns += ["label", "n", "pct"]
    elif aggregate == "distribution":
        columns += ["n"] + QUANTILE_COLUMNS
    else:
        columns += ["n", "value"]

    expected = metric.expected()
    if expected is None:
        observed = result.scored + result.missing
    else:
        observed = expected
    summary = {
        **metric.describe(),
        "aggregate": aggregate,
        "scored": result.scored,
        "missing": result.missing if expected is None else expected - result.scored,
        "coverage": result.scored / observed if observed else 0.0,
    }
    if length_strata:
        summary["length_strata"] = list(length_strata.edges)
    return Report(name="stratify_metric", columns=columns, rows=rows, summary=summary)
