"""
Statistics over a built corpus: parallelism distributions, per-language
profiles, fraction translated and stratified auxiliary metrics.
"""

from mwpar.analyze.buckets import DEFAULT_BUCKET_SPEC, DEFAULT_BUCKETS, ParallelismBucket, parse_buckets
from mwpar.analyze.fraction import fraction_with_translation, load_totals
from mwpar.analyze.histogram import (
    HistogramReport,
    histogram_from_bucket_counts,
    histogram_from_size_counts,
    parallelism_histogram,
)
from mwpar.analyze.languages import LanguageStats, per_language_stats, resource_group_mean
from mwpar.analyze.metrics import Metric, Sampler, build_metric
from mwpar.analyze.reports import Report
from mwpar.analyze.scores import ScoreTable, load_score_table
from mwpar.analyze.stratify import LengthStrata, stratify_metric

__all__ = [
    "DEFAULT_BUCKET_SPEC",
    "DEFAULT_BUCKETS",
    "ParallelismBucket",
    "parse_buckets",
    "fraction_with_translation",
    "load_totals",
    "HistogramReport",
    "histogram_from_bucket_counts",
    "histogram_from_size_counts",
    "parallelism_histogram",
    "LanguageStats",
    "per_language_stats",
    "resource_group_mean",
    "Metric",
    "Sampler",
    "build_metric",
    "Report",
    "ScoreTable",
    "load_score_table",
    "LengthStrata",
    "stratify_metric",
]
