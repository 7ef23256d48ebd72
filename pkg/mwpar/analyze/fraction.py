"""
Fraction of a language's monolingual data that has a translation in the corpus.
"""

import logging
from typing import Literal, Mapping, Union

from app.core.exceptions import ConfigError, DataConsistencyError, DataError
from mwpar.analyze.reports import Report
from mwpar.builder.corpus import Corpus
from mwpar.ingest.textio import PathLike, iter_lines

logger = logging.getLogger(__name__)

CountMode = Literal["with-near-duplicates", "after-dedup"]

_STAGES = {
    "with-near-duplicates": "unique_before_dedup",
    "after-dedup": "unique_after_dedup",
}


def load_totals(path: PathLike) -> dict[str, int]:
    """
    Read monolingual totals as ``lang<TAB>count`` lines.

    Blank lines and ``#`` comments are skipped.

    Raises:
        DataError: On a malformed line or a repeated language
    """
    totals: dict[str, int] = {}
    for line_no, line in enumerate(iter_lines(path, strict=True), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        try:
            lang, count = fields[0].strip(), int(fields[1])
        except (IndexError, ValueError) as exc:
            raise DataError(f"{path}:{line_no}: expected 'lang<TAB>count', got {line!r}") from exc
        if not lang or count < 0 or len(fields) != 2:
            raise DataError(f"{path}:{line_no}: expected 'lang<TAB>count', got {line!r}")
        if lang in totals:
            raise DataError(f"{path}:{line_no}: duplicate language {lang!r}")
        totals[lang] = count
    return totals


def translated_counts(corpus: Corpus, count_mode: CountMode = "with-near-duplicates") -> dict[str, int]:
    try:
        stage = _STAGES[count_mode]
    except KeyError:
        raise ConfigError(f"Unknown count mode {count_mode!r}; expected one of {sorted(_STAGES)}") from None
    return corpus.unique_sentences(stage)


def fraction_with_translation(
    corpus: Union[Corpus, Mapping[str, int]],
    monolingual_totals: Mapping[str, int],
    count_mode: CountMode = "with-near-duplicates",
) -> dict[str, float]:
    """
    Percentage of each language's unique monolingual sentences that were translated.

    The numerator is the per-language unique sentence count recorded by the
    builder before near-duplicate removal (or after it, with
    ``count_mode="after-dedup"``). Languages without a total are omitted;
    languages with a total but absent from the corpus get 0.

    Args:
        corpus: A built Corpus, or a ready mapping lang → translated count
        monolingual_totals: lang → unique monolingual sentence count
        count_mode: Which build stage supplies the numerator

    Returns:
        dict: lang → percentage, ordered by language code

    Raises:
        DataConsistencyError: If a total is below the translated count
    """
    translated = translated_counts(corpus, count_mode) if isinstance(corpus, Corpus) else dict(corpus)

    result: dict[str, float] = {}
    for lang in sorted(monolingual_totals):
        total = monolingual_totals[lang]
        count = translated.get(lang, 0)
        if total < count:
            raise DataConsistencyError(
                f"Monolingual total for {lang!r} is below its translated count",
                details={"lang": lang, "total": total, "translated": count},
            )
        result[lang] = 100.0 * count / total if total else 0.0

    skipped = sorted(set(translated) - set(monolingual_totals))
    if skipped:
        logger.info(f"No monolingual totals for {len(skipped)} corpus language(s); omitted")
    return result


def fraction_report(
    fractions: Mapping[str, float],
    translated: Mapping[str, int],
    totals: Mapping[str, int],
    count_mode: CountMode,
) -> Report:
    return Report(
        name="fraction_with_translation",
        columns=["lang", "translated", "total", "pct"],
        rows=[
            {"lang": lang, "translated": translated.get(lang, 0), "total": totals[lang], "pct": pct}
            for lang, pct in fractions.items()
        ],
        summary={"count_mode": count_mode, "languages": len(fractions)},
    )
