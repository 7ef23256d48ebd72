"""
Sentence content digests.

Sentences are identified by an XXH3 digest of their UTF-8 bytes with a fixed
seed, so digests are stable across runs, processes and shard counts. The
default width is 64 bits; 128 bits is available for corpora large enough
for 64-bit birthday collisions to matter (about one expected collision at
6.4 billion sentences).
"""

import xxhash

HASH_ALGORITHM = "xxh3"
HASH_SEED = 0
SUPPORTED_BITS = (64, 128)

_MASK_64 = (1 << 64) - 1


def hash_sentence(text: str, bits: int = 64) -> int:
    """
    Digest a sentence.

    Args:
        text: Non-empty sentence, already trimmed
        bits: Digest width, 64 or 128

    Returns:
        int: Unsigned digest
    """
    data = text.encode("utf-8")
    if bits == 64:
        return xxhash.xxh3_64_intdigest(data, seed=HASH_SEED)
    if bits == 128:
        return xxhash.xxh3_128_intdigest(data, seed=HASH_SEED)
    raise ValueError(f"unsupported digest width: {bits}")


def split_digest(digest: int) -> tuple[int, int]:
    """Split a digest into (high, low) 64-bit words; high is 0 for 64-bit digests."""
    return digest >> 64, digest & _MASK_64


def join_digest(high: int, low: int) -> int:
    return (int(high) << 64) | int(low)


def hash_info(bits: int) -> dict:
    """Describe the digest scheme for manifests."""
    return {"algorithm": HASH_ALGORITHM, "bits": bits, "seed": HASH_SEED}
