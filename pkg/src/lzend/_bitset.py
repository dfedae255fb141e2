"""Flat-array bitwise trie over an integer universe.

The key set lives in a stack of bit levels packed into one uint64 array:
level 0 holds one membership bit per key, level k+1 holds one summary bit
per level-k word.  Predecessor/successor walk up until a usable word is
found, then back down along set summary bits, so a query touches at most
two words per level.  All functions are numba kernels operating on the
raw arrays; the owning object tracks sizes and satellite data.
"""

import numpy as np
from numba import int64, njit, uint64

_M1 = uint64(0x5555555555555555)
_M2 = uint64(0x3333333333333333)
_M4 = uint64(0x0F0F0F0F0F0F0F0F)
_H01 = uint64(0x0101010101010101)
_ONE = uint64(1)
_FULL = uint64(0xFFFFFFFFFFFFFFFF)


def alloc_levels(universe):
    """Allocate the packed level array for a universe of the given size.

    Returns (bits, offsets) where offsets[k] is the word offset of level k
    and the last entry marks the end of the top level (a single word).
    """
    sizes = []
    nbits = max(1, int(universe))
    while True:
        nwords = (nbits + 63) >> 6
        sizes.append(nwords)
        if nwords == 1:
            break
        nbits = nwords
    offsets = np.zeros(len(sizes) + 1, np.int64)
    np.cumsum(sizes, out=offsets[1:])
    bits = np.zeros(offsets[-1], np.uint64)
    return bits, offsets


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> uint64(1)) & _M1)
    x = (x & _M2) + ((x >> uint64(2)) & _M2)
    x = (x + (x >> uint64(4))) & _M4
    return (x * _H01) >> uint64(56)


@njit(cache=True, inline="always")
def _msb(x):
    x |= x >> uint64(1)
    x |= x >> uint64(2)
    x |= x >> uint64(4)
    x |= x >> uint64(8)
    x |= x >> uint64(16)
    x |= x >> uint64(32)
    return int64(_popcount(x)) - 1


@njit(cache=True, inline="always")
def _lsb(x):
    return int64(_popcount((x & (uint64(0) - x)) - _ONE))


@njit(cache=True)
def set_contains(bits, offsets, key):
    return (bits[offsets[0] + (key >> 6)] >> uint64(key & 63)) & _ONE != uint64(0)


@njit(cache=True)
def set_insert(bits, offsets, key):
    nlevels = offsets.shape[0] - 1
    pos = key
    for level in range(nlevels):
        word = pos >> 6
        idx = offsets[level] + word
        mask = _ONE << uint64(pos & 63)
        if bits[idx] & mask != uint64(0):
            break
        bits[idx] |= mask
        pos = word


@njit(cache=True)
def set_remove(bits, offsets, key):
    nlevels = offsets.shape[0] - 1
    pos = key
    for level in range(nlevels):
        word = pos >> 6
        idx = offsets[level] + word
        bits[idx] &= ~(_ONE << uint64(pos & 63))
        if bits[idx] != uint64(0):
            break
        pos = word


@njit(cache=True)
def set_pred(bits, offsets, universe, y):
    """Largest key <= y, or -1 if none."""
    if y >= universe:
        y = universe - 1
    if y < 0:
        return int64(-1)
    nlevels = offsets.shape[0] - 1
    pos = y
    level = 0
    while level < nlevels:
        word = pos >> 6
        bit = pos & 63
        value = bits[offsets[level] + word]
        if bit < 63:
            value &= (_ONE << uint64(bit + 1)) - _ONE
        if value != uint64(0):
            result = (word << 6) + _msb(value)
            while level > 0:
                level -= 1
                result = (result << 6) + _msb(bits[offsets[level] + result])
            return result
        if word == 0:
            return int64(-1)
        pos = word - 1
        level += 1
    return int64(-1)


@njit(cache=True)
def set_succ(bits, offsets, universe, y):
    """Smallest key >= y, or -1 if none."""
    if y < 0:
        y = 0
    if y >= universe:
        return int64(-1)
    nlevels = offsets.shape[0] - 1
    pos = y
    level = 0
    while level < nlevels:
        word = pos >> 6
        bit = pos & 63
        value = bits[offsets[level] + word] & (_FULL << uint64(bit))
        if value != uint64(0):
            result = (word << 6) + _lsb(value)
            while level > 0:
                level -= 1
                result = (result << 6) + _lsb(bits[offsets[level] + result])
            return result
        pos = word + 1
        if pos >= offsets[level + 1] - offsets[level]:
            return int64(-1)
        level += 1
    return int64(-1)
