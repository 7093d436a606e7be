"""Hashing primitives shared by the filter: 64-bit FNV-1a, fingerprints,
and the two candidate bucket indexes of partial-key cuckoo hashing.

The alternate index is ``i XOR hash(fingerprint)`` masked to the table size,
which is an involution only when the bucket count is a power of two. All
table sizes in this package are therefore powers of two.
"""

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1

MIN_FINGERPRINT_BITS = 4
MAX_FINGERPRINT_BITS = 32


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a over raw bytes."""
    h = FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & _MASK64
    return h


def fingerprint(key: bytes, fp_bits: int) -> int:
    """Low ``fp_bits`` bits of the key hash; 0 is remapped to 1 because the
    empty slot sentinel is 0."""
    return (fnv1a_64(key) & ((1 << fp_bits) - 1)) or 1


def primary_index(key: bytes, num_buckets: int) -> int:
    """First candidate bucket. ``num_buckets`` must be a power of two.

    Uses the high 32 bits of the key hash. The fingerprint comes from the
    low bits of the same hash, and sharing bits between the two would give
    every key in a bucket the same fingerprint, destroying the
    false-positive rate and trapping kick chains in two-bucket cycles.
    """
    return (fnv1a_64(key) >> 32) & (num_buckets - 1)


_fp_hash_cache: dict[int, int] = {}


def fingerprint_hash(fp: int) -> int:
    """Hash of a fingerprint's canonical 8-byte little-endian encoding.

    Memoized: the fingerprint domain is at most 2^32 values and in practice
    a few hundred, so the cache stays small and saves a per-kick rehash.
    """
    h = _fp_hash_cache.get(fp)
    if h is None:
        h = fnv1a_64(fp.to_bytes(8, "little"))
        _fp_hash_cache[fp] = h
    return h


def alt_index(index: int, fp: int, num_buckets: int) -> int:
    """Second candidate bucket; applying it twice returns ``index``."""
    return (index ^ fingerprint_hash(fp)) & (num_buckets - 1)


def next_pow2(n: int) -> int:
    """Smallest power of two >= n (n >= 1)."""
    return 1 << (n - 1).bit_length() if n > 1 else 1
