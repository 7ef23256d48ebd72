"""
Tuple table: the in-progress assignment of sentences to tuple rows.

Slot payloads (row id, score, digest, language) live in growable numpy
columns, numbered in insertion order; that order later serves as the
tie-break when same-language duplicates carry equal scores. A numpy
open-addressing index maps (language, digest) to its slot; collisions step
to the next position and keys are compared against the payload columns,
so a sentence costs a few fixed-width fields and no Python objects.
"""

from typing import Optional

import numpy as np

from app.core.exceptions import RowOverflowError
from mwpar.ingest.hashing import join_digest, split_digest

MAX_ROWS = 2**63 - 1

EMPTY = -1
MAX_LOAD = 0.6
_MASK_64 = 2**64 - 1
_GOLDEN = 0x9E3779B97F4A7C15


class _Column:
    """Append-only numpy column with amortized doubling."""

    def __init__(self, dtype, capacity: int = 1024):
        self._data = np.empty(capacity, dtype=dtype)
        self._size = 0

    def append(self, value) -> None:
        if self._size == len(self._data):
            grown = np.empty(len(self._data) * 2, dtype=self._data.dtype)
            grown[:self._size] = self._data
            self._data = grown
        self._data[self._size] = value
        self._size += 1

    def view(self) -> np.ndarray:
        return self._data[:self._size]

    def __getitem__(self, index: int):
        return self._data[index]

    def __len__(self) -> int:
        return self._size


def _salt(lang_id: int) -> int:
    return (lang_id * _GOLDEN) & _MASK_64


class _SlotIndex:
    """
    Open-addressing hash index from (language id, digest) to slot.

    Holds only slot numbers; ``key_columns`` returns the (hi, lo, lang)
    payload arrays that keys are checked against. Digests are already
    uniformly mixed, so the home position is taken from their low bits.
    """

    def __init__(self, key_columns, capacity: int = 1024):
        self._keys = key_columns
        self._table = np.full(capacity, EMPTY, dtype=np.int64)
        self._salts: list[int] = []
        self.size = 0

    def _home(self, lang_id: int, hi: int, lo: int) -> int:
        return (lo ^ hi ^ self._salts[lang_id]) & (len(self._table) - 1)

    def find(self, lang_id: int, hi: int, lo: int) -> tuple[int, int]:
        """Return (position, slot); slot is EMPTY when the key is absent and position is where it would go."""
        table = self._table
        mask = len(table) - 1
        his, los, langs = self._keys()
        pos = self._home(lang_id, hi, lo)
        while True:
            slot = int(table[pos])
            if slot == EMPTY:
                return pos, EMPTY
            if los[slot] == lo and his[slot] == hi and langs[slot] == lang_id:
                return pos, slot
            pos = (pos + 1) & mask

    def add_language(self) -> None:
        self._salts.append(_salt(len(self._salts)))

    def insert(self, position: int, slot: int) -> None:
        """Store ``slot`` at a position returned by ``find`` for an absent key."""
        self._table[position] = slot
        self.size += 1
        if self.size > MAX_LOAD * len(self._table):
            self._rehash(2 * len(self._table))

    def _rehash(self, capacity: int) -> None:
        his, los, langs = self._keys()
        n = self.size
        salts = np.array(self._salts, dtype=np.uint64)
        mask = np.uint64(capacity - 1)
        table = np.full(capacity, EMPTY, dtype=np.int64)

        pending = np.arange(n, dtype=np.int64)
        pos = (los[:n] ^ his[:n] ^ salts[langs[:n]]) & mask
        while pending.size:
            free = table[pos.astype(np.int64)] == EMPTY
            claim_pos = pos[free].astype(np.int64)
            claimed, first = np.unique(claim_pos, return_index=True)
            table[claimed] = pending[free][first]
            placed = np.zeros(pending.size, dtype=bool)
            placed[np.flatnonzero(free)[first]] = True
            pending = pending[~placed]
            pos = (pos[~placed] + np.uint64(1)) & mask
        self._table = table


class TupleTable:
    """
    Per-language digest → (row_id, score) maps plus the row counter.

    Invariants:
        - a digest appears at most once per language map
        - every stored row id is below ``num_rows``

    Attributes:
        num_rows: Number of rows created so far
        stats: Merge accounting, set by the merge pass
    """

    def __init__(self):
        self.num_rows = 0
        self.stats = None
        self._languages: list[str] = []
        self._lang_ids: dict[str, int] = {}
        self._counts: list[int] = []
        self._rows = _Column(np.int64)
        self._scores = _Column(np.float64)
        self._digest_hi = _Column(np.uint64)
        self._digest_lo = _Column(np.uint64)
        self._lang = _Column(np.uint16)
        self._index = _SlotIndex(self._key_columns)

    @property
    def languages(self) -> list[str]:
        return sorted(self._languages)

    def _key_columns(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._digest_hi._data, self._digest_lo._data, self._lang._data

    def __len__(self) -> int:
        return len(self._rows)

    def _slot(self, lang: str, digest: int) -> int:
        lang_id = self._lang_ids.get(lang)
        if lang_id is None:
            return EMPTY
        return self._index.find(lang_id, *split_digest(digest))[1]

    def __contains__(self, key: tuple[str, int]) -> bool:
        return self._slot(*key) != EMPTY

    def get(self, lang: str, digest: int) -> Optional[tuple[int, float]]:
        """Return (row_id, score) for a sentence, or None if absent."""
        slot = self._slot(lang, digest)
        if slot == EMPTY:
            return None
        return int(self._rows[slot]), float(self._scores[slot])

    def row_of(self, lang: str, digest: int) -> Optional[int]:
        slot = self._slot(lang, digest)
        return None if slot == EMPTY else int(self._rows[slot])

    def new_row(self) -> int:
        if self.num_rows >= MAX_ROWS:
            raise RowOverflowError(self.num_rows)
        row = self.num_rows
        self.num_rows += 1
        return row

    def add(self, lang: str, digest: int, row: int, score: float) -> int:
        """
        Insert a sentence into a row.

        Returns:
            int: Insertion slot of the new entry

        Raises:
            ValueError: If the sentence is already present or the row does not exist
        """
        if not 0 <= row < self.num_rows:
            raise ValueError(f"row {row} does not exist")
        lang_id = self._lang_ids.get(lang)
        if lang_id is None:
            lang_id = self._lang_ids[lang] = len(self._languages)
            self._languages.append(lang)
            self._counts.append(0)
            self._index.add_language()
        high, low = split_digest(digest)
        position, existing = self._index.find(lang_id, high, low)
        if existing != EMPTY:
            raise ValueError(f"sentence ({lang}, {digest:#x}) already in table")

        slot = len(self._rows)
        self._rows.append(row)
        self._scores.append(score)
        self._digest_hi.append(high)
        self._digest_lo.append(low)
        self._lang.append(lang_id)
        self._index.insert(position, slot)
        self._counts[lang_id] += 1
        return slot

    def unique_per_language(self) -> dict[str, int]:
        return {lang: self._counts[self._lang_ids[lang]] for lang in self.languages}

    def entries(self, lang: str) -> dict[str, np.ndarray]:
        """
        Column arrays for one language, in insertion order.

        Returns:
            dict with ``slot``, ``row``, ``score``, ``digest_hi`` and ``digest_lo`` arrays
        """
        lang_id = self._lang_ids.get(lang)
        if lang_id is None:
            empty = np.empty(0, dtype=np.int64)
            return {
                "slot": empty, "row": empty, "score": np.empty(0, dtype=np.float64),
                "digest_hi": np.empty(0, dtype=np.uint64), "digest_lo": np.empty(0, dtype=np.uint64),
            }
        slots = np.flatnonzero(self._lang.view() == lang_id)
        return {
            "slot": slots,
            "row": self._rows.view()[slots],
            "score": self._scores.view()[slots],
            "digest_hi": self._digest_hi.view()[slots],
            "digest_lo": self._digest_lo.view()[slots],
        }

    def to_mapping(self) -> dict[str, dict[int, tuple[int, float]]]:
        """Plain nested-dict view (lang → digest → (row, score)); for inspection and tests."""
        mapping: dict[str, dict[int, tuple[int, float]]] = {}
        for lang in self.languages:
            cols = self.entries(lang)
            mapping[lang] = {
                join_digest(hi, lo): (int(row), float(score))
                for hi, lo, row, score in zip(cols["digest_hi"], cols["digest_lo"], cols["row"], cols["score"])
            }
        return mapping
