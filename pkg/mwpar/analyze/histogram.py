"""
Parallelism distribution of a corpus.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from app.core.exceptions import ConfigError
from mwpar.analyze.buckets import DEFAULT_BUCKETS, ParallelismBucket, bucket_index, validate_partition
from mwpar.analyze.reports import Report
from mwpar.analyze.sharding import CorpusLike, map_tuples
from mwpar.builder.tuples import TranslationTuple


@dataclass
class HistogramRow:
    bucket: str
    tuple_count: int
    tuple_pct: float
    sentence_count: int
    sentence_pct: float

    def to_dict(self) -> dict:
        return {
            "bucket": self.bucket,
            "tuple_count": self.tuple_count,
            "tuple_pct": self.tuple_pct,
            "sentence_count": self.sentence_count,
            "sentence_pct": self.sentence_pct,
        }


@dataclass
class HistogramReport:
    """
    Tuple and sentence counts per parallelism bucket.

    Attributes:
        rows: One HistogramRow per bucket, in bucket order
        total_tuples: Σ tuple counts
        total_sentences: Σ sentence counts
        multiway_tuple_pct: Share of tuples with three or more languages
        multiway_sentence_pct: Share of sentences in such tuples
        size_counts: Tuple count per exact size, when known
    """

    rows: list[HistogramRow]
    total_tuples: int
    total_sentences: int
    multiway_tuple_pct: Optional[float] = None
    multiway_sentence_pct: Optional[float] = None
    size_counts: dict[int, int] = field(default_factory=dict)

    def row(self, label: str) -> HistogramRow:
        for row in self.rows:
            if row.bucket == label:
                return row
        raise KeyError(label)

    def to_report(self) -> Report:
        return Report(
            name="parallelism_histogram",
            columns=["bucket", "tuple_count", "tuple_pct", "sentence_count", "sentence_pct"],
            rows=[row.to_dict() for row in self.rows],
            summary={
                "total_tuples": self.total_tuples,
                "total_sentences": self.total_sentences,
                "multiway_tuple_pct": self.multiway_tuple_pct,
                "multiway_sentence_pct": self.multiway_sentence_pct,
                "size_counts": {str(k): v for k, v in sorted(self.size_counts.items())},
            },
        )


def _pct(part: int, total: int) -> float:
    return 100.0 * part / total if total else 0.0


def histogram_from_bucket_counts(
    tuple_counts: Sequence[int],
    sentence_counts: Sequence[int],
    buckets: Sequence[ParallelismBucket] = DEFAULT_BUCKETS,
) -> HistogramReport:
    """
    Format already-bucketed counts.

    The multi-way share is derived from buckets that start at size 3 or above;
    it is left unset when a bucket mixes size 2 with larger sizes.
    """
    validate_partition(buckets)
    if not (len(tuple_counts) == len(sentence_counts) == len(buckets)):
        raise ConfigError("Need one tuple count and one sentence count per bucket")

    total_tuples = sum(tuple_counts)
    total_sentences = sum(sentence_counts)
    rows = [
        HistogramRow(b.label, t, _pct(t, total_tuples), s, _pct(s, total_sentences))
        for b, t, s in zip(buckets, tuple_counts, sentence_counts)
    ]

    multiway_tuple_pct = multiway_sentence_pct = None
    if buckets[0].hi == 2:
        multiway_tuple_pct = _pct(total_tuples - tuple_counts[0], total_tuples)
        multiway_sentence_pct = _pct(total_sentences - sentence_counts[0], total_sentences)
    return HistogramReport(rows, total_tuples, total_sentences, multiway_tuple_pct, multiway_sentence_pct)


def histogram_from_size_counts(
    size_counts: Mapping[int, int],
    buckets: Sequence[ParallelismBucket] = DEFAULT_BUCKETS,
) -> HistogramReport:
    """Bucket exact tuple-size counts; a bucket's sentence count is Σ size × count."""
    validate_partition(buckets)
    tuple_counts = [0] * len(buckets)
    sentence_counts = [0] * len(buckets)
    for size, count in size_counts.items():
        i = bucket_index(buckets, size)
        tuple_counts[i] += count
        sentence_counts[i] += size * count

    report = histogram_from_bucket_counts(tuple_counts, sentence_counts, buckets)
    pairs = size_counts.get(2, 0)
    report.multiway_tuple_pct = _pct(report.total_tuples - pairs, report.total_tuples)
    report.multiway_sentence_pct = _pct(report.total_sentences - 2 * pairs, report.total_sentences)
    report.size_counts = dict(sorted(size_counts.items()))
    return report


def count_sizes(tuples: Iterator[TranslationTuple]) -> Counter:
    return Counter(t.size for t in tuples)


def _add(a: Counter, b: Counter) -> Counter:
    return a + b


def parallelism_histogram(
    corpus: CorpusLike,
    buckets: Sequence[ParallelismBucket] = DEFAULT_BUCKETS,
    workers: int = 1,
) -> HistogramReport:
    """
    Tuple and sentence distribution over parallelism buckets.

    Args:
        corpus: Corpus or iterable of tuples
        buckets: Partition of [2, ∞)
        workers: Worker processes for a sharded corpus scan

    Returns:
        HistogramReport

    Raises:
        ConfigError: If the buckets do not partition [2, ∞)
    """
    validate_partition(buckets)
    return histogram_from_size_counts(map_tuples(corpus, count_sizes, _add, workers), buckets)
