"""Public filter API: mode selection, verified deletes, automatic resize.

The facade couples a cuckoo table, an exact key-store, and one resize
policy. Deletes are only honored when the key-store vouches for the key,
so a delete of a never-inserted key can never strip another key's
fingerprint. Resizes rebuild the table from the key-store, which keeps
membership exact across any capacity change.

Occupancy here is measured against the *logical* capacity (the value the
policies steer), not the power-of-two-rounded internal bucket count; the
internal table only ever has at least as many slots, so the policy always
reacts before the table saturates.
"""

import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .core import CuckooTable, table_for_capacity
from .hashing import next_pow2
from .keystore import KeyStore
from .params import FilterParams
from .policy import EofPolicy, GROW, PrePolicy, ResizeDirective, resize_for_crossing


class Mode(str, Enum):
    PRE = "pre"
    EOF = "eof"


class ConsistencyError(RuntimeError):
    """Key-store and table disagreed about a key that must be present."""


@dataclass(frozen=True)
class ResizeReport:
    old_capacity: int
    new_capacity: int
    reinserted: int


@dataclass(frozen=True)
class StatsSnapshot:
    mode: Mode
    item_count: int
    logical_capacity: int
    internal_buckets: int
    occupancy: float
    alpha: Optional[float]
    inserts: int
    deletes: int
    resizes_up: int
    resizes_down: int
    rebuild_reinserted_keys: int


class OcfFilter:
    """Membership filter with automatic resizing and verified deletes.

    Not internally synchronized; wrap every public call in external mutual
    exclusion for shared use.
    """

    def __init__(self, mode: Mode | str, params: FilterParams, seed: int = 0):
        params.validate()
        self.mode = Mode(mode)
        self.params = params
        self.capacity = params.capacity  # logical bucket count
        self._rng = random.Random(seed)
        self.table = table_for_capacity(self.capacity, params, self._rng)
        self.store = KeyStore()
        if self.mode is Mode.EOF:
            self.policy: PrePolicy | EofPolicy = EofPolicy(params)
        else:
            self.policy = PrePolicy(params)
        self._inserts = 0
        self._deletes = 0
        self._resizes_up = 0
        self._resizes_down = 0
        self._rebuild_reinserted = 0

    @property
    def occupancy(self) -> float:
        """item_count over logical capacity * bucket_size."""
        return self.table.item_count / (self.capacity * self.params.bucket_size)

    @property
    def alpha(self) -> Optional[float]:
        return self.policy.alpha if isinstance(self.policy, EofPolicy) else None

    def insert(self, key: bytes) -> bool:
        """True if inserted, False if the key is already stored."""
        if key in self.store:
            return False
        while not self.table.insert(key):
            self._emergency_grow()
        self.store.add(key)
        self._inserts += 1
        self._observe()
        return True

    def contains(self, key: bytes) -> bool:
        return self.table.lookup(key)

    def delete(self, key: bytes) -> bool:
        """True if deleted; False (and no state change) when the key-store
        has no record of the key."""
        if not self.store.remove(key):
            return False
        if not self.table.remove(key):
            raise ConsistencyError(
                "key vouched for by the key-store was missing from the table"
            )
        self._deletes += 1
        self._observe()
        return True

    def resize(self, directive: ResizeDirective) -> ResizeReport:
        """Apply a directive: update logical capacity and, when the rounded
        bucket count changes, rebuild from the key-store.

        A rebuild that cannot place every key (possible after an aggressive
        shrink) doubles the target and restarts, so it always terminates.
        """
        old = self.capacity
        self.capacity = directive.new_capacity
        if directive.action == GROW:
            self._resizes_up += 1
        else:
            self._resizes_down += 1
        target = next_pow2(self.capacity)
        if target == self.table.num_buckets:
            return ResizeReport(old, self.capacity, 0)
        while True:
            fresh = CuckooTable(target, self.params, self._rng)
            if all(fresh.insert(key) for key in self.store):
                break
            target *= 2
        self.table = fresh
        self._rebuild_reinserted += len(self.store)
        return ResizeReport(old, self.capacity, len(self.store))

    def stats(self) -> StatsSnapshot:
        return StatsSnapshot(
            mode=self.mode,
            item_count=self.table.item_count,
            logical_capacity=self.capacity,
            internal_buckets=self.table.num_buckets,
            occupancy=self.occupancy,
            alpha=self.alpha,
            inserts=self._inserts,
            deletes=self._deletes,
            resizes_up=self._resizes_up,
            resizes_down=self._resizes_down,
            rebuild_reinserted_keys=self._rebuild_reinserted,
        )

    def _observe(self) -> None:
        directive = self.policy.observe(
            self.occupancy, self.capacity, self.table.item_count
        )
        if directive is not None:
            self.resize(directive)

    def _emergency_grow(self) -> None:
        # kick chain exhausted below threshold: grow anyway so inserts
        # never fail
        if isinstance(self.policy, EofPolicy):
            directive = resize_for_crossing(
                self.policy.alpha, self.capacity, GROW,
                self.table.item_count, self.params.bucket_size,
            )
        else:
            directive = ResizeDirective(GROW, 2 * self.capacity)
        self.resize(directive)
