"""
Per-language parallelism profiles.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterator, Sequence

from app.core.exceptions import ConfigError
from mwpar.analyze.reports import Report
from mwpar.analyze.sharding import CorpusLike, map_tuples
from mwpar.builder.tuples import TranslationTuple


@dataclass
class LanguageStats:
    """
    Attributes:
        lang: Language code
        unique_sentences: Sentences of this language in the corpus
        mean_parallelism: Σ(p·count_p) / Σ count_p over the histogram
        histogram: Tuple size → number of this language's sentences in tuples of that size
    """

    lang: str
    unique_sentences: int
    mean_parallelism: float
    histogram: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "lang": self.lang,
            "unique_sentences": self.unique_sentences,
            "mean_parallelism": self.mean_parallelism,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def _language_sizes(tuples: Iterator[TranslationTuple]) -> dict[str, Counter]:
    sizes: dict[str, Counter] = defaultdict(Counter)
    for t in tuples:
        for lang in t.members:
            sizes[lang][t.size] += 1
    return dict(sizes)


def _merge_language_sizes(a: dict[str, Counter], b: dict[str, Counter]) -> dict[str, Counter]:
    merged = {lang: Counter(c) for lang, c in a.items()}
    for lang, counts in b.items():
        merged.setdefault(lang, Counter()).update(counts)
    return merged


def stats_from_histograms(histograms: dict[str, Counter]) -> list[LanguageStats]:
    """Turn per-language size histograms into LanguageStats, most-resourced first."""
    stats = []
    for lang, hist in histograms.items():
        n = sum(hist.values())
        if n == 0:
            continue
        mean = sum(size * count for size, count in hist.items()) / n
        stats.append(LanguageStats(lang, n, mean, dict(sorted(hist.items()))))
    stats.sort(key=lambda s: (-s.unique_sentences, s.lang))
    return stats


def per_language_stats(corpus: CorpusLike, workers: int = 1) -> list[LanguageStats]:
    """
    Count every sentence's tuple size, per language.

    Returns:
        LanguageStats ordered by descending unique_sentences (ties by language code)
    """
    return stats_from_histograms(map_tuples(corpus, _language_sizes, _merge_language_sizes, workers))


def resource_group_mean(stats: Sequence[LanguageStats], k: int, highest: bool = True) -> float:
    """
    Unweighted mean of mean_parallelism over the k highest (or lowest) resourced languages.

    Raises:
        ConfigError: If k is not positive
    """
    if k < 1:
        raise ConfigError(f"k must be positive, got {k}")
    ordered = sorted(stats, key=lambda s: (-s.unique_sentences, s.lang))
    group = ordered[:k] if highest else ordered[-k:]
    if not group:
        return 0.0
    return sum(s.mean_parallelism for s in group) / len(group)


def language_report(stats: Sequence[LanguageStats], top_k: int = 0) -> Report:
    summary = {"languages": len(stats), "sentences": sum(s.unique_sentences for s in stats)}
    if top_k:
        summary["top_k"] = top_k
        summary["top_k_mean_parallelism"] = resource_group_mean(stats, top_k, highest=True)
        summary["bottom_k_mean_parallelism"] = resource_group_mean(stats, top_k, highest=False)
    return Report(
        name="per_language_stats",
        columns=["lang", "unique_sentences", "mean_parallelism"],
        rows=[{"lang": s.lang, "unique_sentences": s.unique_sentences, "mean_parallelism": s.mean_parallelism} for s in stats],
        summary=summary,
        precision=2,
    )
