"""
Sentence → parallelism lookup over a built corpus.
"""

import logging
from typing import Iterable, Optional

from mwpar.builder.tuples import TranslationTuple
from mwpar.ingest.hashing import hash_sentence

logger = logging.getLogger(__name__)


class ParallelismLookup:
    """
    Exact (language, digest) → tuple size map.

    Immutable once built, so it can be shared by threads or shipped to worker
    processes. Sentences absent from the corpus have parallelism 1.

    Attributes:
        hash_bits: Digest width of the corpus
    """

    def __init__(self, sizes: dict[str, dict[int, int]], hash_bits: int = 64):
        self._sizes = sizes
        self.hash_bits = hash_bits

    @classmethod
    def from_tuples(cls, tuples: Iterable[TranslationTuple], hash_bits: int = 64) -> "ParallelismLookup":
        sizes: dict[str, dict[int, int]] = {}
        count = 0
        for t in tuples:
            for lang, member in t.members.items():
                sizes.setdefault(lang, {})[member.digest] = t.size
                count += 1
        logger.info(f"Parallelism lookup covers {count} sentences in {len(sizes)} languages")
        return cls(sizes, hash_bits)

    @classmethod
    def from_corpus(cls, corpus) -> "ParallelismLookup":
        return cls.from_tuples(corpus, corpus.hash_bits)

    @property
    def languages(self) -> list[str]:
        return sorted(self._sizes)

    def __len__(self) -> int:
        return sum(len(m) for m in self._sizes.values())

    def size_of(self, lang: str, digest: int) -> Optional[int]:
        by_digest = self._sizes.get(lang)
        return None if by_digest is None else by_digest.get(digest)

    def parallelism(self, lang: str, text: str) -> int:
        """Size of the tuple containing the trimmed sentence, or 1 if it has none."""
        return self.size_of(lang, hash_sentence(text.strip(), self.hash_bits)) or 1
