"""
Per-sentence and per-pair metrics observed on corpus tuples.

A metric turns one tuple into observations ``(value, length)``; the stratifier
files each observation under the tuple's parallelism bucket and, optionally,
a length stratum. Missing values (no score for a sentence) are yielded as
None so they can be reported as coverage.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, NamedTuple, Optional

import xxhash

from app.core.exceptions import ConfigError
from mwpar.analyze.scores import ScoreKind, ScoreTable, Value
from mwpar.builder.tuples import TranslationTuple
from mwpar.ingest.records import SentenceKey


class Observation(NamedTuple):
    value: Optional[Value]
    length: float


@dataclass(frozen=True)
class Sampler:
    """
    Uniform sampling decided by a seeded digest of the observation key,
    so the sample does not depend on corpus order or worker count.
    """

    rate: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.rate <= 1.0:
            raise ConfigError(f"Sample rate must be in (0, 1], got {self.rate}")

    def keep(self, *parts) -> bool:
        if self.rate >= 1.0:
            return True
        key = "\t".join(str(p) for p in parts).encode("utf-8")
        return xxhash.xxh3_64_intdigest(key, seed=self.seed) < self.rate * 2**64


def _key_parts(key: SentenceKey) -> tuple:
    return (key.lang, key.digest)


class Metric(ABC):
    """Abstract base class for metrics stratified by parallelism."""

    name: str = "metric"
    kind: ScoreKind = "numeric"
    keying: str = "sentence"

    def __init__(self, lang: Optional[str] = None, direction: Optional[tuple[str, str]] = None, sampler: Optional[Sampler] = None):
        self.lang = lang
        self.direction = direction
        self.sampler = sampler or Sampler()

    @abstractmethod
    def observe(self, t: TranslationTuple) -> Iterator[Observation]:
        """
        Observations contributed by one tuple.

        Args:
            t: Corpus tuple

        Yields:
            Observation per sentence or pair; value None when unscored
        """
        pass

    def expected(self) -> Optional[int]:
        """Number of scored keys the metric can match, when known up front."""
        return None

    def describe(self) -> dict:
        described = {"metric": self.name, "kind": self.kind, "keying": self.keying}
        if self.lang:
            described["lang"] = self.lang
        if self.direction:
            described["direction"] = "-".join(self.direction)
        if self.sampler.rate < 1.0:
            described["sample_rate"] = self.sampler.rate
            described["seed"] = self.sampler.seed
        return described


class SentenceMetric(Metric):
    """A metric with one observation per member sentence."""

    def observe(self, t: TranslationTuple) -> Iterator[Observation]:
        for lang, member in t.members.items():
            if self.lang is not None and lang != self.lang:
                continue
            if not self.sampler.keep(lang, member.digest):
                continue
            yield Observation(self.value(lang, member), float(len(member.text)))

    @abstractmethod
    def value(self, lang: str, member) -> Optional[Value]:
        pass


class LengthMetric(SentenceMetric):
    """Character length of each sentence."""

    name = "length"

    def value(self, lang, member):
        return float(len(member.text))


class MarginMetric(SentenceMetric):
    """The score a sentence was admitted with during the merge pass."""

    name = "margin"

    def value(self, lang, member):
        return member.score


class SentenceScoreMetric(SentenceMetric):
    name = "scores"

    def __init__(self, table: ScoreTable, **kwargs):
        if table.keying != "sentence":
            raise ConfigError("SentenceScoreMetric needs a per-sentence score table")
        super().__init__(**kwargs)
        self.table = table
        self.kind = table.kind

    def value(self, lang, member):
        return self.table.get(SentenceKey(lang, member.digest))


class PairScoreMetric(Metric):
    """
    Scores keyed by ordered sentence pair.

    A pair score is attributed to a tuple only when both sides are members of
    it; each table key can match at most one tuple, so coverage is matched
    keys over table keys.
    """

    name = "scores"
    keying = "pair"

    def __init__(self, table: ScoreTable, **kwargs):
        if table.keying != "pair":
            raise ConfigError("PairScoreMetric needs a per-pair score table")
        super().__init__(**kwargs)
        self.table = table
        self.kind = table.kind

    def _wanted(self, src_lang: str, tgt_lang: str) -> bool:
        return self.direction is None or (src_lang, tgt_lang) == self.direction

    def expected(self) -> int:
        return sum(
            1 for (src, tgt) in self.table.entries
            if self._wanted(src.lang, tgt.lang) and self.sampler.keep(*_key_parts(src), *_key_parts(tgt))
        )

    def observe(self, t: TranslationTuple) -> Iterator[Observation]:
        for (src_lang, src), (tgt_lang, tgt) in permutations(t.members.items(), 2):
            if not self._wanted(src_lang, tgt_lang):
                continue
            key = (SentenceKey(src_lang, src.digest), SentenceKey(tgt_lang, tgt.digest))
            value = self.table.get(key)
            if value is None or not self.sampler.keep(*_key_parts(key[0]), *_key_parts(key[1])):
                continue
            yield Observation(value, (len(src.text) + len(tgt.text)) / 2.0)


class PairLengthMetric(Metric):
    """Average character length of the two sides of the selected direction."""

    name = "length"
    keying = "pair"

    def observe(self, t: TranslationTuple) -> Iterator[Observation]:
        src_lang, tgt_lang = self.direction
        if src_lang not in t.members or tgt_lang not in t.members:
            return
        src, tgt = t.members[src_lang], t.members[tgt_lang]
        if self.sampler.keep(src_lang, src.digest, tgt_lang, tgt.digest):
            length = (len(src.text) + len(tgt.text)) / 2.0
            yield Observation(length, length)


def build_metric(
    name: Optional[str] = None,
    table: Optional[ScoreTable] = None,
    lang: Optional[str] = None,
    direction: Optional[tuple[str, str]] = None,
    sampler: Optional[Sampler] = None,
) -> Metric:
    """
    Resolve a built-in metric name or a score table into a Metric.

    Raises:
        ConfigError: If neither or both are given, or the selection does not fit the keying
    """
    if (name is None) == (table is None):
        raise ConfigError("Give exactly one of a score table or a built-in metric (length, margin)")
    if lang and direction:
        raise ConfigError("Select a language or a direction, not both")
    kwargs = {"lang": lang, "direction": direction, "sampler": sampler}

    if table is not None:
        if table.keying == "pair":
            if lang:
                raise ConfigError("Per-pair tables select by direction, not language")
            return PairScoreMetric(table, **kwargs)
        if direction:
            raise ConfigError("Per-sentence tables select by language, not direction")
        return SentenceScoreMetric(table, **kwargs)

    if name == "length":
        return PairLengthMetric(**kwargs) if direction else LengthMetric(**kwargs)
    if name == "margin":
        if direction:
            raise ConfigError("The margin metric is per sentence; select a language instead")
        return MarginMetric(**kwargs)
    raise ConfigError(f"Unknown metric {name!r}; expected 'length' or 'margin'")
