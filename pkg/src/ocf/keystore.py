"""Exact set of currently-inserted keys.

The store is the authority for verified deletes and the source of truth
when the filter is rebuilt at a new size. Same concurrency contract as the
table: single writer, externally synchronized.
"""

from typing import Iterator


class KeyStore:
    def __init__(self):
        self._keys: set[bytes] = set()

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, key: bytes) -> bool:
        return key in self._keys

    def __iter__(self) -> Iterator[bytes]:
        """Each stored key exactly once, order unspecified. The store must
        not be mutated during iteration."""
        return iter(self._keys)

    def add(self, key: bytes) -> bool:
        """True if the key was newly added, False if already present."""
        if key in self._keys:
            return False
        self._keys.add(key)
        return True

    def remove(self, key: bytes) -> bool:
        """True if the key was present and removed, False if absent."""
        if key in self._keys:
            self._keys.remove(key)
            return True
        return False
