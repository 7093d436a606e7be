"""Raw cuckoo filter table: fingerprint storage, kick loop, lookup, removal.

No resizing and no exact key tracking happens here; the facade owns both.
Buckets are a flat slot array (``num_buckets * bucket_size`` cells) with 0
as the empty sentinel. A bucket may hold duplicate fingerprints.
"""

import random

from .hashing import fingerprint_hash, fnv1a_64, next_pow2
from .params import FilterParams


class CuckooTable:
    """Fixed-size cuckoo filter over ``num_buckets`` (a power of two).

    Single-writer; callers needing shared mutation must synchronize
    externally. The eviction victim is chosen by the supplied RNG so runs
    are reproducible under a fixed seed.
    """

    def __init__(self, num_buckets: int, params: FilterParams, rng: random.Random):
        if num_buckets < 1 or num_buckets & (num_buckets - 1):
            raise ValueError(f"num_buckets must be a power of two, got {num_buckets}")
        self.num_buckets = num_buckets
        self.params = params
        self.rng = rng
        self.slots = [0] * (num_buckets * params.bucket_size)
        self.item_count = 0
        self._fp_mask = (1 << params.fingerprint_bits) - 1

    @property
    def slot_count(self) -> int:
        return self.num_buckets * self.params.bucket_size

    def occupancy(self) -> float:
        """Fraction of filled slots."""
        return self.item_count / self.slot_count

    def _candidates(self, key: bytes) -> tuple[int, int, int]:
        h = fnv1a_64(key)
        fp = (h & self._fp_mask) or 1
        i1 = (h >> 32) & (self.num_buckets - 1)
        i2 = (i1 ^ fingerprint_hash(fp)) & (self.num_buckets - 1)
        return fp, i1, i2

    def insert(self, key: bytes) -> bool:
        """Place the key's fingerprint; False means the kick chain exceeded
        max_displacements (filter full).

        On failure the chain is unwound so the stored multiset is exactly
        what it was before the call.
        """
        fp, i1, i2 = self._candidates(key)
        slots = self.slots
        b = self.params.bucket_size
        for i in (i1, i2):
            base = i * b
            for j in range(base, base + b):
                if slots[j] == 0:
                    slots[j] = fp
                    self.item_count += 1
                    return True

        rng = self.rng
        mask = self.num_buckets - 1
        i = i2 if rng.getrandbits(1) else i1
        cur = fp
        trail = []
        for _ in range(self.params.max_displacements):
            j = i * b + rng.randrange(b)
            trail.append(j)
            cur, slots[j] = slots[j], cur
            i = (i ^ fingerprint_hash(cur)) & mask
            base = i * b
            for t in range(base, base + b):
                if slots[t] == 0:
                    slots[t] = cur
                    self.item_count += 1
                    return True
        for j in reversed(trail):
            cur, slots[j] = slots[j], cur
        return False

    def lookup(self, key: bytes) -> bool:
        """True iff the fingerprint sits in either candidate bucket. Never
        false for a placed, unremoved key."""
        fp, i1, i2 = self._candidates(key)
        b = self.params.bucket_size
        base = i1 * b
        if fp in self.slots[base:base + b]:
            return True
        base = i2 * b
        return fp in self.slots[base:base + b]

    def remove(self, key: bytes) -> bool:
        """Clear one matching slot; False if the fingerprint is absent from
        both candidate buckets."""
        fp, i1, i2 = self._candidates(key)
        slots = self.slots
        b = self.params.bucket_size
        for i in (i1, i2):
            base = i * b
            for j in range(base, base + b):
                if slots[j] == fp:
                    slots[j] = 0
                    self.item_count -= 1
                    return True
        return False

    def stored_fingerprints(self) -> list[int]:
        """All non-empty slots, for consistency checks."""
        return [fp for fp in self.slots if fp != 0]


def table_for_capacity(capacity: int, params: FilterParams, rng: random.Random) -> CuckooTable:
    """Fresh table whose bucket count is ``capacity`` rounded up to a power
    of two."""
    return CuckooTable(next_pow2(capacity), params, rng)
