"""Static index over the reversed input.

Construction runs suffix-array induced sorting (SA-IS) and Kasai's LCP
algorithm on the reversed byte string, then keeps only what the parser
needs: the rank of each suffix keyed by *forward* end position, the LCP
array, and a range-minimum structure over it.  The suffix array itself
and the reversed copy are dropped after construction.
"""

from dataclasses import dataclass

import numpy as np
from numba import int64, njit


@njit(cache=True)
def _fill_heads(counts, heads):
    total = 0
    for c in range(counts.shape[0]):
        heads[c] = total
        total += counts[c]


@njit(cache=True)
def _fill_tails(counts, tails):
    total = 0
    for c in range(counts.shape[0]):
        total += counts[c]
        tails[c] = total - 1


@njit(cache=True)
def _induce(sa, s, stype, counts, heads, tails):
    n = s.shape[0]
    _fill_heads(counts, heads)
    for i in range(n):
        j = sa[i] - 1
        if sa[i] > 0 and stype[j] == 0:
            sa[heads[s[j]]] = j
            heads[s[j]] += 1
    _fill_tails(counts, tails)
    for i in range(n - 1, -1, -1):
        j = sa[i] - 1
        if sa[i] > 0 and stype[j] == 1:
            sa[tails[s[j]]] = j
            tails[s[j]] -= 1


@njit(cache=True)
def _sais(s, sigma):
    # s must end with a unique smallest sentinel value 0.
    n = s.shape[0]
    sa = np.full(n, -1, np.int64)
    if n == 1:
        sa[0] = 0
        return sa

    stype = np.zeros(n, np.uint8)  # 1 = S-type suffix
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and stype[i + 1] == 1):
            stype[i] = 1

    counts = np.zeros(sigma, np.int64)
    for i in range(n):
        counts[s[i]] += 1
    heads = np.zeros(sigma, np.int64)
    tails = np.zeros(sigma, np.int64)

    # First round: drop LMS suffixes anywhere into their buckets and
    # induce; this sorts the LMS substrings.
    _fill_tails(counts, tails)
    nlms = 0
    for i in range(1, n):
        if stype[i] == 1 and stype[i - 1] == 0:
            sa[tails[s[i]]] = i
            tails[s[i]] -= 1
            nlms += 1
    _induce(sa, s, stype, counts, heads, tails)

    lms_sorted = np.empty(nlms, np.int64)
    k = 0
    for i in range(n):
        j = sa[i]
        if j > 0 and stype[j] == 1 and stype[j - 1] == 0:
            lms_sorted[k] = j
            k += 1

    # Name LMS substrings in sorted order.
    names = np.full(n, -1, np.int64)
    names[lms_sorted[0]] = 0
    current = 0
    prev = lms_sorted[0]
    for t in range(1, nlms):
        pos = lms_sorted[t]
        d = 0
        differ = False
        while True:
            pa = prev + d
            pb = pos + d
            if pa >= n or pb >= n:
                differ = True
                break
            a_lms = d > 0 and stype[pa] == 1 and stype[pa - 1] == 0
            b_lms = d > 0 and stype[pb] == 1 and stype[pb - 1] == 0
            if a_lms and b_lms:
                break
            if a_lms != b_lms or s[pa] != s[pb] or stype[pa] != stype[pb]:
                differ = True
                break
            d += 1
        if differ:
            current += 1
        names[pos] = current
        prev = pos

    reduced = np.empty(nlms, np.int64)
    lms_pos = np.empty(nlms, np.int64)
    k = 0
    for i in range(1, n):
        if stype[i] == 1 and stype[i - 1] == 0:
            lms_pos[k] = i
            reduced[k] = names[i]
            k += 1

    if current + 1 == nlms:
        reduced_sa = np.empty(nlms, np.int64)
        for t in range(nlms):
            reduced_sa[reduced[t]] = t
    else:
        reduced_sa = _sais(reduced, current + 1)

    # Second round: place LMS suffixes in their final order and induce.
    for i in range(n):
        sa[i] = -1
    _fill_tails(counts, tails)
    for t in range(nlms - 1, -1, -1):
        j = lms_pos[reduced_sa[t]]
        sa[tails[s[j]]] = j
        tails[s[j]] -= 1
    _induce(sa, s, stype, counts, heads, tails)
    return sa


@njit(cache=True)
def _kasai(s, sa):
    n = s.shape[0]
    lcp = np.zeros(n, np.int64)
    rank = np.empty(n, np.int64)
    for i in range(n):
        rank[sa[i]] = i
    length = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + length < n and j + length < n and s[i + length] == s[j + length]:
                length += 1
            lcp[r] = length
            if length > 0:
                length -= 1
        else:
            length = 0
    return lcp


def suffix_array(data):
    """Suffix array of a byte string (ranks of all suffixes, ascending)."""
    buf = np.frombuffer(bytes(data), dtype=np.uint8)
    n = buf.shape[0]
    padded = np.empty(n + 1, np.int64)
    padded[:n] = buf
    padded[:n] += 1
    padded[n] = 0
    return _sais(padded, 257)[1:]


def lcp_array(data, sa):
    """Kasai LCP array: lcp[i] is the common-prefix length of the suffixes
    ranked i and i-1 (lcp[0] = 0)."""
    buf = np.frombuffer(bytes(data), dtype=np.uint8)
    return _kasai(buf, np.ascontiguousarray(sa, dtype=np.int64))


_PAD = np.iinfo(np.int64).max // 4


@njit(cache=True)
def rmq_index(values, table, logs, block, x, y):
    """Index of the leftmost minimum of values[x..y] (inclusive)."""
    bx = x // block
    by = y // block
    best = x
    if bx == by:
        for i in range(x + 1, y + 1):
            if values[i] < values[best]:
                best = i
        return best
    for i in range(x + 1, (bx + 1) * block):
        if values[i] < values[best]:
            best = i
    if by - bx >= 2:
        a = bx + 1
        b = by - 1
        k = logs[b - a + 1]
        i1 = table[k, a]
        i2 = table[k, b - (1 << k) + 1]
        cand = i1 if values[i1] <= values[i2] else i2
        if values[cand] < values[best]:
            best = cand
    for i in range(by * block, y + 1):
        if values[i] < values[best]:
            best = i
    return best


class RangeMinQuery:
    """Range-minimum over a fixed array: blockwise argmin plus a sparse
    table over block minima; queries scan at most two partial blocks."""

    def __init__(self, values):
        values = np.ascontiguousarray(values, dtype=np.int64)
        n = values.shape[0]
        self.values = values
        self.block = max(4, n.bit_length())
        nblocks = max(1, -(-n // self.block))
        padded = np.full(nblocks * self.block, _PAD, np.int64)
        padded[:n] = values
        arg0 = padded.reshape(nblocks, self.block).argmin(axis=1)
        arg0 += np.arange(nblocks, dtype=np.int64) * self.block
        levels = max(1, nblocks.bit_length())
        table = np.empty((levels, nblocks), np.int64)
        table[0] = arg0
        for k in range(1, levels):
            half = 1 << (k - 1)
            m = nblocks - (1 << k) + 1
            if m > 0:
                left = table[k - 1, :m]
                right = table[k - 1, half : half + m]
                table[k, :m] = np.where(values[left] <= values[right], left, right)
            table[k, max(m, 0) :] = table[k - 1, max(m, 0) :]
        self.table = table
        logs = np.zeros(nblocks + 1, np.int64)
        for i in range(2, nblocks + 1):
            logs[i] = logs[i >> 1] + 1
        self.logs = logs

    def __call__(self, x, y):
        n = self.values.shape[0]
        if not 0 <= x <= y < n:
            raise IndexError(f"rmq range [{x}, {y}] out of bounds for length {n}")
        return int(rmq_index(self.values, self.table, self.logs, self.block, x, y))


@dataclass(frozen=True)
class TextIndex:
    """Immutable index over the reversed input.

    end_rank[i] is the lexicographic rank, among all suffixes of the
    reversed input, of the suffix that begins at reversed position
    n-i-1; in forward terms, the rank of reading the text backwards
    from position i.  lcp is the LCP array of the reversed input and
    rmq answers range-minimum queries over it.
    """

    n: int
    end_rank: np.ndarray
    lcp: np.ndarray
    rmq: RangeMinQuery

    def lce_lex(self, x, y):
        """Common-prefix length of the reversed-input suffixes ranked x and y.

        Equals the longest common suffix of the forward prefixes whose
        end positions have ranks x and y.  x == y is rejected: the full
        suffix length is not an LCP entry.
        """
        if x == y:
            raise ValueError("lce_lex requires two distinct ranks")
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise IndexError(f"ranks ({x}, {y}) out of bounds for n={self.n}")
        lo, hi = (x, y) if x < y else (y, x)
        return int(self.lcp[self.rmq(lo + 1, hi)])


def build(data):
    """Build the index for a byte string (empty input allowed)."""
    data = bytes(data)
    n = len(data)
    if n == 0:
        empty = np.empty(0, np.int64)
        return TextIndex(0, empty, empty, RangeMinQuery(empty))
    sa = suffix_array(data[::-1])
    lcp = lcp_array(data[::-1], sa)
    end_rank = np.empty(n, np.int64)
    end_rank[n - 1 - sa] = np.arange(n, dtype=np.int64)
    return TextIndex(n, end_rank, lcp, RangeMinQuery(lcp))
