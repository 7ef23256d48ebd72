"""
Tests for Sentence Digests.

This module tests determinism, width selection and the spread of the
fixed-seed sentence digests.
"""

import numpy as np
import pytest
import xxhash

from mwpar.ingest.hashing import HASH_SEED, hash_info, hash_sentence, join_digest, split_digest

# chi-square critical value, 255 degrees of freedom, alpha = 0.001
CHI2_CRITICAL_255 = 330.5


def test_hash_is_deterministic():
    """Test that the same text always gets the same digest."""
    assert hash_sentence("hello") == hash_sentence("hello")
    assert hash_sentence("hello", 128) == hash_sentence("hello", 128)


def test_hash_is_case_sensitive():
    """Test that case variants are distinct sentences."""
    assert hash_sentence("hello") != hash_sentence("Hello")


def test_hash_matches_documented_algorithm():
    """Test that digests are XXH3 with the fixed seed over UTF-8 bytes."""
    assert hash_sentence("olá") == xxhash.xxh3_64_intdigest("olá".encode("utf-8"), seed=HASH_SEED)
    assert hash_sentence("olá", 128) == xxhash.xxh3_128_intdigest("olá".encode("utf-8"), seed=HASH_SEED)


def test_hash_widths():
    """Test that digests fit their configured width."""
    assert 0 <= hash_sentence("hello") < 2**64
    assert 0 <= hash_sentence("hello", 128) < 2**128


def test_hash_rejects_unsupported_width():
    """Test that only 64 and 128 bit digests are available."""
    with pytest.raises(ValueError):
        hash_sentence("hello", 32)


def test_split_and_join_digest():
    """Test that 128-bit digests split into two 64-bit words and back."""
    digest = hash_sentence("hello", 128)
    high, low = split_digest(digest)

    assert high < 2**64 and low < 2**64
    assert join_digest(high, low) == digest
    assert split_digest(hash_sentence("hello")) == (0, hash_sentence("hello"))


def test_hash_info():
    """Test the manifest description of the digest scheme."""
    assert hash_info(64) == {"algorithm": "xxh3", "bits": 64, "seed": 0}


@pytest.mark.slow
def test_no_collisions_in_a_million_strings():
    """Test that 10^6 distinct strings produce 10^6 distinct digests."""
    digests = {hash_sentence(f"sentence number {i}") for i in range(1_000_000)}
    assert len(digests) == 1_000_000


@pytest.mark.slow
def test_top_byte_is_uniform():
    """Test a chi-square goodness of fit over the top byte of 10^6 digests."""
    n = 1_000_000
    top = np.fromiter((hash_sentence(f"random string {i}") >> 56 for i in range(n)), dtype=np.int64, count=n)
    observed = np.bincount(top, minlength=256)
    expected = n / 256
    chi2 = float(((observed - expected) ** 2 / expected).sum())

    assert chi2 < CHI2_CRITICAL_255
