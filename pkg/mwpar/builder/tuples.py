"""
Finalized translation tuples and their line-delimited JSON form.
"""

from dataclasses import dataclass
from typing import Iterator

import orjson

from mwpar.ingest.hashing import hash_sentence


@dataclass(frozen=True, slots=True)
class Member:
    """One sentence of a tuple."""

    digest: int
    text: str
    score: float


@dataclass(slots=True)
class TranslationTuple:
    """
    A row of the corpus: one sentence per member language.

    Attributes:
        row_id: Row id assigned during the merge pass
        members: Language code → Member, ordered by language code

    Example:
        >>> t.to_dict()
        {'row': 0, 'size': 3, 'members': {'en': {'text': 'hello', 'score': 1.2}, ...}}
    """

    row_id: int
    members: dict[str, Member]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError(f"tuple {self.row_id} has {len(self.members)} member(s); at least 2 required")

    @property
    def size(self) -> int:
        """Multi-way parallelism of every sentence in the tuple."""
        return len(self.members)

    @property
    def languages(self) -> list[str]:
        return list(self.members)

    def text(self, lang: str) -> str:
        return self.members[lang].text

    def to_dict(self) -> dict:
        return {
            "row": self.row_id,
            "size": self.size,
            "members": {lang: {"text": m.text, "score": m.score} for lang, m in self.members.items()},
        }

    def to_json(self) -> bytes:
        return orjson.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, document: dict, hash_bits: int = 64) -> "TranslationTuple":
        members = {
            lang: Member(hash_sentence(m["text"], hash_bits), m["text"], float(m["score"]))
            for lang, m in sorted(document["members"].items())
        }
        return cls(int(document["row"]), members)

    @classmethod
    def from_json(cls, line: bytes, hash_bits: int = 64) -> "TranslationTuple":
        return cls.from_dict(orjson.loads(line), hash_bits)


def read_tuples(path, hash_bits: int = 64) -> Iterator[TranslationTuple]:
    with open(path, "rb") as f:
        for line in f:
            if line.strip():
                yield TranslationTuple.from_json(line, hash_bits)
