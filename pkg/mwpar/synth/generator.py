"""
Synthetic scored bitext with planted ground truth.

Each planted tuple is emitted as a star of pairs around a hub sentence with
margins in [1.25, 1.5), so the merge pass rebuilds it exactly. Two kinds of
noise sit in lower margin ranges and leave tuple sizes untouched:

    near-duplicate variants  [1.12, 1.20)  join an existing row, removed by dedup
    redundant pairs          [1.00, 1.08)  both sides already present, discarded

Monolingual totals are drawn so that each language's translated share is a
negative-binomial sample around the planted translation rate.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from app.core.exceptions import ConfigError
from mwpar.ingest.records import BitextRecord
from mwpar.ingest.textio import PathLike, write_json

logger = logging.getLogger(__name__)

LANGUAGE_CODES = [
    "en", "de", "fr", "es", "it", "pt", "nl", "ru", "pl", "cs", "sv", "da", "fi",
    "hu", "ro", "bg", "el", "tr", "uk", "ar", "he", "hi", "ja", "ko", "zh", "vi",
]

STAR_MARGINS = (1.25, 1.5)
NEAR_DUP_MARGINS = (1.12, 1.2)
REDUNDANT_MARGINS = (1.0, 1.08)
RANDOM_MARGINS = (1.0, 1.5)

DEFAULT_SIZES = "2:0.6,3:0.2,4:0.08,5:0.05,6:0.03,8:0.03,10:0.01"

_VOCAB = (
    "the river market light winter garden window story music city paper letter road "
    "morning stone friend table mountain voice ocean bread teacher bridge summer field"
).split()


def language_codes(n: int) -> list[str]:
    if n <= len(LANGUAGE_CODES):
        return LANGUAGE_CODES[:n]
    return LANGUAGE_CODES + [f"x{i:02d}" for i in range(n - len(LANGUAGE_CODES))]


def parse_sizes(spec: str) -> dict[int, float]:
    """
    Parse ``size:weight`` pairs, e.g. ``2:0.6,3:0.25``; weights are normalized.

    Raises:
        ConfigError: On malformed pairs, sizes below 2 or non-positive total weight
    """
    sizes: dict[int, float] = {}
    try:
        for token in spec.split(","):
            size, weight = token.split(":")
            sizes[int(size)] = float(weight)
    except ValueError as exc:
        raise ConfigError(f"Bad size distribution {spec!r}; expected e.g. 2:0.6,3:0.4") from exc
    if any(s < 2 for s in sizes) or any(w < 0 for w in sizes.values()) or sum(sizes.values()) <= 0:
        raise ConfigError(f"Bad size distribution {spec!r}; sizes must be ≥ 2 and weights positive")
    total = sum(sizes.values())
    return {s: w / total for s, w in sorted(sizes.items())}


class SynthConfig(BaseModel):
    """Generator parameters; all outputs are a pure function of these."""

    model_config = ConfigDict(extra="forbid")

    seed: int = 0
    tuples: int = Field(default=1000, ge=0)
    languages: int = Field(default=12, ge=2)
    sizes: dict[int, float] = Field(default_factory=lambda: parse_sizes(DEFAULT_SIZES))
    translation_rate: float = Field(default=0.25, gt=0.0, le=1.0)
    near_dup_rate: float = Field(default=0.05, ge=0.0, le=1.0)
    redundant_rate: float = Field(default=0.1, ge=0.0, le=1.0)
    corrupt_rate: float = Field(default=0.01, ge=0.0, lt=1.0)
    random_pairs: int = Field(default=0, ge=0)
    reuse_rate: float = Field(default=0.3, ge=0.0, le=1.0)

    @field_validator("sizes", mode="before")
    @classmethod
    def _parse_sizes(cls, value):
        return parse_sizes(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_sizes(self) -> "SynthConfig":
        too_big = [s for s in self.sizes if s > self.languages]
        if too_big:
            raise ValueError(f"tuple sizes {too_big} exceed the language count {self.languages}")
        return self

    def to_manifest(self) -> dict:
        """Run-config form, so the ground truth file can be replayed with ``gen --config``."""
        return {"command": "gen", "seed": self.seed, "params": self.model_dump(mode="json", exclude={"seed"})}


def make_synth_config(**values) -> SynthConfig:
    try:
        return SynthConfig(**values)
    except ValidationError as exc:
        raise ConfigError(f"Invalid generator configuration: {exc}") from exc


@dataclass
class PlantedCorpus:
    """
    Generated lines and the values planted in them.

    Attributes:
        lines: Bitext TSV lines in file order (corrupt lines included)
        truth: Ground truth written to ground_truth.json
        totals: lang → monolingual unique-sentence total
        random_lines: Unstructured pairs for fuzzing, if requested
    """

    lines: list[str]
    truth: dict
    totals: dict[str, int]
    random_lines: list[str] = field(default_factory=list)


def _sentence(rng: np.random.Generator, tag: str) -> str:
    words = rng.choice(_VOCAB, size=int(rng.integers(3, 12)))
    return f"{tag} " + " ".join(words) + "."


def _line(src_lang: str, tgt_lang: str, src: str, tgt: str, margin: float) -> str:
    return f"{src_lang}\t{tgt_lang}\t{src}\t{tgt}\t{margin:.4f}"


def _corrupt(rng: np.random.Generator, line: str) -> str:
    fields = line.split("\t")
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return "\t".join(fields[:4])
    if kind == 1:
        return "\t".join(fields[:4] + ["n/a"])
    return "\t".join([fields[0], fields[0]] + fields[2:])


def random_pairs(rng: np.random.Generator, n_pairs: int, langs: list[str], reuse_rate: float = 0.3) -> list[BitextRecord]:
    """
    Unstructured pairs over a shared sentence pool.

    Each side reuses an earlier sentence of its language with probability
    ``reuse_rate``, so rows collide and every merge case occurs.
    """
    pool: dict[str, list[str]] = {lang: [] for lang in langs}
    records = []
    for i in range(n_pairs):
        a, b = rng.choice(len(langs), size=2, replace=False)
        sides = []
        for j, lang in enumerate((langs[a], langs[b])):
            if pool[lang] and rng.random() < reuse_rate:
                text = pool[lang][int(rng.integers(0, len(pool[lang])))]
            else:
                text = f"r{i}.{j} {lang} " + " ".join(rng.choice(_VOCAB, size=3))
                pool[lang].append(text)
            sides.append(text)
        margin = round(float(rng.uniform(*RANDOM_MARGINS)), 4)
        records.append(BitextRecord(langs[a], langs[b], sides[0], sides[1], margin, margin_text=f"{margin:.4f}"))
    return records


def generate(config: SynthConfig) -> PlantedCorpus:
    """
    Generate a planted corpus.

    Returns:
        PlantedCorpus whose ``truth`` holds the exact tuple-size counts,
        per-language sentence counts, expected build counts, corrupt line
        numbers and monolingual totals
    """
    rng = np.random.default_rng(config.seed)
    langs = language_codes(config.languages)
    size_keys = np.array(list(config.sizes), dtype=np.int64)
    size_probs = np.array(list(config.sizes.values()), dtype=np.float64)
    planted = rng.choice(size_keys, size=config.tuples, p=size_probs) if config.tuples else np.array([], dtype=np.int64)

    lines: list[str] = []
    per_lang: dict[str, Counter] = {lang: Counter() for lang in langs}
    joined = variants = redundant = 0

    for t, k in enumerate(planted.tolist()):
        members = [langs[i] for i in rng.choice(len(langs), size=k, replace=False)]
        texts = {lang: _sentence(rng, f"t{t}") for lang in members}
        hub = members[0]
        for other in members[1:]:
            margin = float(rng.uniform(*STAR_MARGINS))
            if rng.random() < 0.5:
                lines.append(_line(hub, other, texts[hub], texts[other], margin))
            else:
                lines.append(_line(other, hub, texts[other], texts[hub], margin))
        joined += k - 2
        for lang in members:
            per_lang[lang]["sentences"] += 1
            per_lang[lang]["parallelism"] += k

        for lang in members:
            if rng.random() < config.near_dup_rate:
                partner = members[(members.index(lang) + 1 + int(rng.integers(0, k - 1))) % k]
                variant = texts[lang][:-1] + "!"
                lines.append(_line(lang, partner, variant, texts[partner], float(rng.uniform(*NEAR_DUP_MARGINS))))
                per_lang[lang]["variants"] += 1
                variants += 1

        if rng.random() < config.redundant_rate:
            a, b = rng.choice(k, size=2, replace=False)
            lines.append(_line(members[a], members[b], texts[members[a]], texts[members[b]], float(rng.uniform(*REDUNDANT_MARGINS))))
            redundant += 1

    lines = [lines[i] for i in rng.permutation(len(lines))]
    n_valid = len(lines)

    corrupt_lines: list[int] = []
    n_corrupt = int(rng.binomial(n_valid, config.corrupt_rate)) if n_valid else 0
    if n_corrupt:
        sources = rng.choice(n_valid, size=n_corrupt)
        positions = sorted(rng.choice(n_valid + n_corrupt, size=n_corrupt, replace=False).tolist())
        bad = iter(_corrupt(rng, lines[i]) for i in sources.tolist())
        valid = iter(lines)
        marked = set(positions)
        lines = [next(bad) if i in marked else next(valid) for i in range(n_valid + n_corrupt)]
        corrupt_lines = [p + 1 for p in positions]

    totals: dict[str, int] = {}
    for lang in langs:
        translated = per_lang[lang]["sentences"] + per_lang[lang]["variants"]
        if translated == 0:
            continue
        untranslated = int(rng.negative_binomial(translated, config.translation_rate)) if config.translation_rate < 1 else 0
        totals[lang] = translated + untranslated

    size_counts = Counter(planted.tolist())
    truth = {
        "config": config.to_manifest(),
        "size_counts": {str(s): n for s, n in sorted(size_counts.items())},
        "languages": {
            lang: {
                "sentences": c["sentences"],
                "variants": c["variants"],
                "unique_before_dedup": c["sentences"] + c["variants"],
                "mean_parallelism": c["parallelism"] / c["sentences"],
            }
            for lang, c in per_lang.items() if c["sentences"]
        },
        "counts": {
            "lines_read": len(lines),
            "lines_rejected": n_corrupt,
            "pairs_in": n_valid,
            "pairs_new_row": int(config.tuples),
            "pairs_joined": joined + variants,
            "pairs_discarded": redundant,
            "duplicates_removed": variants,
            "tuples_out": int(config.tuples),
            "sentences_out": int(planted.sum()) if config.tuples else 0,
        },
        "corrupt_lines": corrupt_lines,
        "translation_rate": config.translation_rate,
        "monolingual_totals": totals,
    }

    random_lines = []
    if config.random_pairs:
        random_lines = [r.to_tsv() for r in random_pairs(rng, config.random_pairs, langs, config.reuse_rate)]
    logger.info(f"Planted {config.tuples} tuples as {n_valid} pairs plus {n_corrupt} corrupt lines")
    return PlantedCorpus(lines, truth, totals, random_lines)


def write_planted(corpus: PlantedCorpus, out_dir: PathLike) -> Path:
    """
    Write ``bitext.tsv``, ``monolingual_totals.tsv``, ``ground_truth.json``
    and, when requested, ``random_pairs.tsv``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "bitext.tsv", "w", encoding="utf-8", newline="\n") as f:
        f.writelines(line + "\n" for line in corpus.lines)
    with open(out / "monolingual_totals.tsv", "w", encoding="utf-8", newline="\n") as f:
        f.writelines(f"{lang}\t{n}\n" for lang, n in sorted(corpus.totals.items()))
    if corpus.random_lines:
        with open(out / "random_pairs.tsv", "w", encoding="utf-8", newline="\n") as f:
            f.writelines(line + "\n" for line in corpus.random_lines)
    write_json(out / "ground_truth.json", corpus.truth)
    return out


def generate_corpus(out_dir: PathLike, config: Optional[SynthConfig] = None) -> PlantedCorpus:
    planted = generate(config or SynthConfig())
    write_planted(planted, out_dir)
    return planted
