"""
Tests for Inversion and Near-Duplicate Removal.
"""

import numpy as np
import pytest

from mwpar.builder.invert import invert_and_dedup
from mwpar.builder.table import TupleTable
from mwpar.ingest.hashing import hash_sentence


def h(text: str) -> int:
    return hash_sentence(text)


def test_highest_score_survives():
    """Test that of two same-language entries in a row, the higher score survives."""
    table = TupleTable()
    row = table.new_row()
    table.add("en", h("Hello"), row, 1.3)
    table.add("es", h("hola"), row, 1.3)
    table.add("en", h("hello"), row, 1.2)

    inverted = invert_and_dedup(table)

    assert inverted.to_mapping()["en"] == {0: (h("Hello"), 1.3)}
    assert inverted.duplicates_removed == 1
    assert inverted.unique_before() == {"en": 2, "es": 1}
    assert inverted.unique_after() == {"en": 1, "es": 1}


def test_equal_scores_keep_earliest_insertion():
    """Test the stable tie-break on equal scores."""
    table = TupleTable()
    row = table.new_row()
    table.add("es", h("hola"), row, 1.2)
    table.add("en", h("first"), row, 1.2)
    table.add("en", h("second"), row, 1.2)

    inverted = invert_and_dedup(table)

    assert inverted.to_mapping()["en"] == {0: (h("first"), 1.2)}


def test_later_higher_score_wins():
    """Test that the maximum wins even when inserted later."""
    table = TupleTable()
    row = table.new_row()
    table.add("es", h("hola"), row, 1.2)
    table.add("en", h("low"), row, 1.1)
    table.add("en", h("high"), row, 1.4)

    assert invert_and_dedup(table).to_mapping()["en"] == {0: (h("high"), 1.4)}


def test_identity_without_duplicates():
    """Test that rows with one entry per language pass through unchanged."""
    table = TupleTable()
    for i in range(3):
        row = table.new_row()
        table.add("en", h(f"en {i}"), row, 1.0 + i / 10)
        table.add("de", h(f"de {i}"), row, 1.0 + i / 10)

    inverted = invert_and_dedup(table)

    for lang in ("en", "de"):
        assert inverted.to_mapping()[lang] == {row: (d, s) for d, (row, s) in table.to_mapping()[lang].items()}
    assert inverted.duplicates_removed == 0


def test_empty_table():
    """Test inversion of an empty table."""
    inverted = invert_and_dedup(TupleTable())

    assert inverted.languages == []
    assert inverted.num_rows == 0


@pytest.mark.oracle
@pytest.mark.parametrize("workers", [1, 3])
def test_fuzzed_duplicates_against_insertion_log(workers):
    """Test max-score survivors with earliest-insertion ties on fuzzed tables."""
    rng = np.random.default_rng(8)
    langs = ["en", "de", "fr", "es"]
    table = TupleTable()
    log: list[tuple[str, int, int, float]] = []
    for row_id in range(300):
        table.new_row()
        for lang in rng.choice(langs, size=int(rng.integers(2, 5)), replace=False):
            for k in range(int(rng.integers(1, 4))):
                digest = h(f"{lang} {row_id} {k}")
                score = float(rng.choice([1.1, 1.2, 1.3]))
                table.add(str(lang), digest, row_id, score)
                log.append((str(lang), row_id, digest, score))

    expected: dict[str, dict[int, tuple[int, float]]] = {}
    for lang, row_id, digest, score in log:
        best = expected.setdefault(lang, {}).get(row_id)
        if best is None or score > best[1]:
            expected[lang][row_id] = (digest, score)

    inverted = invert_and_dedup(table, workers=workers)

    assert inverted.to_mapping() == expected
    assert inverted.duplicates_removed == len(log) - sum(len(m) for m in expected.values())
