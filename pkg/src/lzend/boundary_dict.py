"""Ordered dictionary over phrase-end positions in lex-rank space.

Keys are suffix ranks of already-closed phrase boundaries, values are the
phrase numbers they belong to.  The parser needs four operations fast:
insert, remove, predecessor, successor.  Keys come from the fixed
universe [0, n), so the structure is a bitwise trie over that universe
(see _bitset) with a plain value array as satellite storage.
"""

import numpy as np

from ._bitset import (
    alloc_levels,
    set_contains,
    set_insert,
    set_pred,
    set_remove,
    set_succ,
)


class BoundaryDict:
    """Mutable key -> phrase-number map with predecessor/successor.

    Not safe for concurrent mutation; hand the whole object between
    threads instead.
    """

    def __init__(self, universe):
        if universe < 1:
            raise ValueError("universe size must be >= 1")
        self.universe = int(universe)
        self.bits, self.offsets = alloc_levels(self.universe)
        self.values = np.zeros(self.universe, np.int64)
        self._size = 0

    def __len__(self):
        return self._size

    def __contains__(self, key):
        return 0 <= key < self.universe and bool(set_contains(self.bits, self.offsets, key))

    def insert(self, key, value):
        """Add key -> value; inserting a present key is a caller bug."""
        self._check_key(key)
        if set_contains(self.bits, self.offsets, key):
            raise ValueError(f"key {key} already present")
        set_insert(self.bits, self.offsets, key)
        self.values[key] = value
        self._size += 1

    def remove(self, key):
        """Delete key; removing an absent key is a caller bug."""
        self._check_key(key)
        if not set_contains(self.bits, self.offsets, key):
            raise KeyError(key)
        set_remove(self.bits, self.offsets, key)
        self._size -= 1

    def predecessor(self, y):
        """(key, value) with the largest key <= y, or None."""
        key = set_pred(self.bits, self.offsets, self.universe, y)
        if key < 0:
            return None
        return int(key), int(self.values[key])

    def successor(self, y):
        """(key, value) with the smallest key >= y, or None."""
        key = set_succ(self.bits, self.offsets, self.universe, y)
        if key < 0:
            return None
        return int(key), int(self.values[key])

    def items(self):
        """(key, value) pairs in strictly increasing key order."""
        key = set_succ(self.bits, self.offsets, self.universe, 0)
        while key >= 0:
            yield int(key), int(self.values[key])
            key = set_succ(self.bits, self.offsets, self.universe, key + 1)

    def _check_key(self, key):
        if not 0 <= key < self.universe:
            raise ValueError(f"key {key} outside universe [0, {self.universe})")
