"""LZ-End parser.

Scans the input left to right; for each new character the last phrase is
either merged with its predecessor, extended, or a fresh single-byte
phrase begins.  Copy-source candidates are found with predecessor and
successor probes around the rank of the current end position, and the
admissible copy length comes from a range-minimum query on the LCP
array.  The boundary dictionary is maintained lazily: a phrase is only
marked once the next phrase begins, and only a merge ever unmarks one.

parse() runs a compiled kernel over flat arrays.  ParseState is the same
algorithm as an inspectable per-position state machine, used for
instrumentation and tests; the two are cross-checked against each other
and against the greedy reference in the test suite.
"""

import gc
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from numba import int64, njit

from . import text_index
from ._bitset import set_insert, set_pred, set_remove, set_succ
from .boundary_dict import BoundaryDict
from .text_index import rmq_index


class Phrase(NamedTuple):
    """One phrase: copy the last length-1 bytes of the prefix ending at
    phrase `source` (0 = copy nothing), then append the byte `ext`."""

    source: int
    length: int
    ext: int


@dataclass
class Parsing:
    """Ordered phrases plus the original input length."""

    phrases: list
    n: int

    @property
    def max_phrase_len(self):
        return max((p.length for p in self.phrases), default=0)


@dataclass(frozen=True)
class ParseConfig:
    """Parser options.

    max_phrase_len caps every phrase at h bytes, trading compression for
    bounded random-access chains; merge_first reorders the candidate
    search to try merges before extensions (same output, tuned for
    highly repetitive inputs).
    """

    max_phrase_len: Optional[int] = None
    merge_first: bool = False

    def __post_init__(self):
        if self.max_phrase_len is not None and self.max_phrase_len < 1:
            raise ValueError("max_phrase_len must be >= 1")


DEFAULT_CONFIG = ParseConfig()

BEGIN, EXTEND, MERGE = "begin", "extend", "merge"
_ACT_NAMES = (BEGIN, EXTEND, MERGE)


class ParseStep(NamedTuple):
    """Trace record for one input position: what the step did, the phrase
    it wrote, and the phrase count afterwards (the written phrase is
    always number z)."""

    pos: int
    action: str
    phrase: Phrase
    z: int


@njit(cache=True, inline="always")
def _probe(bits, offsets, values, lcp, table, logs, block, n, probe, smaller):
    """One directional dictionary probe from a lex rank.

    Returns (hit, key, phrase, copy_len) where copy_len is the longest
    common extension between the probe rank and the found boundary.
    """
    if smaller:
        j = set_pred(bits, offsets, n, probe - 1)
        if j < 0:
            return False, int64(0), int64(0), int64(0)
        length = lcp[rmq_index(lcp, table, logs, block, j + 1, probe)]
    else:
        j = set_succ(bits, offsets, n, probe + 1)
        if j < 0:
            return False, int64(0), int64(0), int64(0)
        length = lcp[rmq_index(lcp, table, logs, block, probe + 1, j)]
    return True, j, values[j], length


_A_BEGIN, _A_EXTEND, _A_MERGE = 0, 1, 2


@njit(cache=True)
def _parse_loop(
    s,
    end_rank,
    lcp,
    table,
    logs,
    block,
    bits,
    offsets,
    values,
    cap,
    merge_first,
    fsrc,
    flen,
    record,
    act,
    act_src,
    act_len,
):
    n = s.shape[0]
    fsrc[0] = 0
    flen[0] = 1
    z = 1
    if record:
        act[0] = _A_BEGIN
        act_src[0] = 0
        act_len[0] = 1
    for i in range(1, n):
        cur = end_rank[i - 1]
        lz = flen[z - 1]
        lz1 = flen[z - 2] if z >= 2 else int64(0)
        ok_extend = cap <= 0 or lz < cap
        ok_merge = z >= 2 and (cap <= 0 or lz + lz1 < cap)
        p1 = int64(-1)
        p2 = int64(-1)

        if not ok_extend:
            pass  # cap also rules out merging; force a new phrase
        elif merge_first:
            if ok_merge:
                prev_key = end_rank[i - lz - 1]
                set_remove(bits, offsets, prev_key)
                hit, j, p, length = _probe(
                    bits, offsets, values, lcp, table, logs, block, n, cur, True
                )
                if hit and length >= lz + lz1:
                    p2 = p
                else:
                    hit, j, p, length = _probe(
                        bits, offsets, values, lcp, table, logs, block, n, cur, False
                    )
                    if hit and length >= lz + lz1:
                        p2 = p
                if p2 < 0:
                    set_insert(bits, offsets, prev_key)
            if p2 < 0:
                hit, j, p, length = _probe(
                    bits, offsets, values, lcp, table, logs, block, n, cur, True
                )
                if hit and length >= lz:
                    p1 = p
                hit, j, p, length = _probe(
                    bits, offsets, values, lcp, table, logs, block, n, cur, False
                )
                if hit and length >= lz:
                    p1 = p
        else:
            for d in range(2):
                if d == 1 and p1 >= 0 and p2 >= 0:
                    break
                smaller = d == 0
                hit, j, p, length = _probe(
                    bits, offsets, values, lcp, table, logs, block, n, cur, smaller
                )
                if hit and length >= lz:
                    p1 = p
                    if z >= 2:
                        merge_len = length
                        cand = p
                        if p == z - 1:
                            # the nearest boundary is the phrase about to be
                            # merged away; probe once more past it
                            hit2, j2, q, len2 = _probe(
                                bits, offsets, values, lcp, table, logs, block, n, j, smaller
                            )
                            if hit2:
                                cand = q
                                merge_len = min(length, len2)
                            else:
                                merge_len = int64(-1)
                        if ok_merge and merge_len >= lz + lz1:
                            p2 = cand

        if p2 >= 0:
            if not merge_first:
                set_remove(bits, offsets, end_rank[i - lz - 1])
            z -= 1
            fsrc[z - 1] = p2
            flen[z - 1] = lz + lz1 + 1
            if record:
                act[i] = _A_MERGE
                act_src[i] = p2
                act_len[i] = lz + lz1 + 1
        elif p1 >= 0:
            fsrc[z - 1] = p1
            flen[z - 1] = lz + 1
            if record:
                act[i] = _A_EXTEND
                act_src[i] = p1
                act_len[i] = lz + 1
        else:
            set_insert(bits, offsets, cur)
            values[cur] = z
            fsrc[z] = 0
            flen[z] = 1
            z += 1
            if record:
                act[i] = _A_BEGIN
                act_src[i] = 0
                act_len[i] = 1
    return z


def _run_kernel(data, idx, config, record):
    n = idx.n
    s = np.frombuffer(data, dtype=np.uint8)
    boundary = BoundaryDict(max(1, n))
    fsrc = np.empty(n, np.int64)
    flen = np.empty(n, np.int64)
    size = n if record else 1
    act = np.zeros(size, np.uint8)
    act_src = np.zeros(size, np.int64)
    act_len = np.zeros(size, np.int64)
    rmq = idx.rmq
    z = _parse_loop(
        s,
        idx.end_rank,
        idx.lcp,
        rmq.table,
        rmq.logs,
        rmq.block,
        boundary.bits,
        boundary.offsets,
        boundary.values,
        config.max_phrase_len or 0,
        config.merge_first,
        fsrc,
        flen,
        record,
        act,
        act_src,
        act_len,
    )
    ends = np.cumsum(flen[:z]) - 1
    exts = s[ends]
    # building millions of small tuples thrashes the cyclic GC; pause it
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        phrases = list(map(Phrase, fsrc[:z].tolist(), flen[:z].tolist(), exts.tolist()))
    finally:
        if gc_was_enabled:
            gc.enable()
    return Parsing(phrases, n), (act, act_src, act_len)


def parse(data, config=DEFAULT_CONFIG):
    """Compute the LZ-End parsing of a byte string."""
    data = bytes(data)
    if not data:
        return Parsing([], 0)
    return parse_indexed(data, text_index.build(data), config)


def parse_indexed(data, idx, config=DEFAULT_CONFIG):
    """parse() with a prebuilt index; data must match the indexed bytes."""
    data = bytes(data)
    if idx.n != len(data):
        raise ValueError("index length does not match input length")
    if not data:
        return Parsing([], 0)
    parsing, _ = _run_kernel(data, idx, config, False)
    return parsing


def parse_steps(data, config=DEFAULT_CONFIG):
    """parse() plus the per-position action trace."""
    data = bytes(data)
    if not data:
        return Parsing([], 0), []
    parsing, (act, act_src, act_len) = _run_kernel(
        data, text_index.build(data), config, True
    )
    steps = []
    z = 0
    for i in range(len(data)):
        action = _ACT_NAMES[act[i]]
        if action == BEGIN:
            z += 1
        elif action == MERGE:
            z -= 1
        steps.append(
            ParseStep(i, action, Phrase(int(act_src[i]), int(act_len[i]), data[i]), z)
        )
    return parsing, steps


class ParseState:
    """The parse as an explicit state machine, one input position per step.

    Exposes the candidate search pieces (lex_smaller_phrase,
    lex_greater_phrase, find_copy_source, step_case_distinction) and the
    live boundary dictionary, which the fast kernel keeps internal.
    After step i the dictionary holds exactly the end-position ranks of
    phrases 1..z-1; the newest phrase is never in it.
    """

    def __init__(self, data, idx=None, config=DEFAULT_CONFIG):
        self.data = bytes(data)
        self.idx = idx if idx is not None else text_index.build(self.data)
        if self.idx.n != len(self.data):
            raise ValueError("index length does not match input length")
        self.config = config
        self.boundary = BoundaryDict(max(1, len(self.data)))
        self.phrases = []
        self.z = 0
        self.pos = 0
        self.end_lex = None  # rank of the end of the parsed prefix
        self.probe = None  # rank the next directional query starts from
        self.cand_extend = None
        self.cand_merge = None
        self._merge_unmarked = False

    def lex_smaller_phrase(self):
        """Nearest marked boundary below the probe rank: (key, phrase,
        copy_len), or (0, 0, 0) on a miss."""
        hit = self.boundary.predecessor(self.probe - 1)
        if hit is None:
            return 0, 0, 0
        key, phrase = hit
        return key, phrase, int(self.idx.lcp[self.idx.rmq(key + 1, self.probe)])

    def lex_greater_phrase(self):
        """Nearest marked boundary above the probe rank; see
        lex_smaller_phrase."""
        hit = self.boundary.successor(self.probe + 1)
        if hit is None:
            return 0, 0, 0
        key, phrase = hit
        return key, phrase, int(self.idx.lcp[self.idx.rmq(self.probe + 1, key)])

    def find_copy_source(self, direction):
        """Resolve extension/merge candidates in one lex direction,
        probing a second time when the first hit is the phrase that a
        merge would swallow."""
        query = self.lex_smaller_phrase if direction == "smaller" else self.lex_greater_phrase
        key, phrase, length = query()
        if phrase == 0:
            return
        lz = self.phrases[self.z - 1].length
        cap = self.config.max_phrase_len
        if length < lz or (cap is not None and lz >= cap):
            return
        self.cand_extend = phrase
        if self.pos > lz:
            lz1 = self.phrases[self.z - 2].length
            merge_len, cand = length, phrase
            if phrase == self.z - 1:
                self.probe = key
                key2, phrase2, length2 = query()
                if phrase2 == 0:
                    return
                merge_len, cand = min(length, length2), phrase2
            if cap is not None and lz + lz1 >= cap:
                return
            if merge_len >= lz + lz1:
                self.cand_merge = cand

    def step_case_distinction(self):
        """Apply the resolved candidates for the current position and
        return the action taken."""
        i = self.pos
        byte = self.data[i]
        if self.cand_merge is not None:
            lz = self.phrases[self.z - 1].length
            if not self._merge_unmarked:
                self.boundary.remove(self.idx.end_rank[i - lz - 1])
            merged = Phrase(self.cand_merge, lz + self.phrases[self.z - 2].length + 1, byte)
            self.phrases.pop()
            self.phrases[self.z - 2] = merged
            self.z -= 1
            return MERGE
        if self.cand_extend is not None:
            old = self.phrases[self.z - 1]
            self.phrases[self.z - 1] = Phrase(self.cand_extend, old.length + 1, byte)
            return EXTEND
        self.boundary.insert(self.end_lex, self.z)
        self.phrases.append(Phrase(0, 1, byte))
        self.z += 1
        return BEGIN

    def step(self):
        """Consume one input position and return its trace record."""
        i = self.pos
        if i >= len(self.data):
            raise IndexError("input exhausted")
        if i == 0:
            self.phrases.append(Phrase(0, 1, self.data[0]))
            self.z = 1
            self.pos = 1
            return ParseStep(0, BEGIN, self.phrases[0], 1)
        self.end_lex = int(self.idx.end_rank[i - 1])
        self.probe = self.end_lex
        self.cand_extend = None
        self.cand_merge = None
        self._merge_unmarked = False
        if self.config.merge_first:
            self._find_candidates_merge_first()
        else:
            self.find_copy_source("smaller")
            if self.cand_extend is None or self.cand_merge is None:
                self.probe = self.end_lex
                self.find_copy_source("greater")
        action = self.step_case_distinction()
        self.pos = i + 1
        return ParseStep(i, action, self.phrases[self.z - 1], self.z)

    def _find_candidates_merge_first(self):
        i = self.pos
        lz = self.phrases[self.z - 1].length
        cap = self.config.max_phrase_len
        if cap is not None and lz >= cap:
            return
        lz1 = self.phrases[self.z - 2].length if self.z >= 2 else 0
        if self.z >= 2 and not (cap is not None and lz + lz1 >= cap):
            prev_key = int(self.idx.end_rank[i - lz - 1])
            self.boundary.remove(prev_key)
            for query in (self.lex_smaller_phrase, self.lex_greater_phrase):
                self.probe = self.end_lex
                key, phrase, length = query()
                if phrase != 0 and length >= lz + lz1:
                    self.cand_merge = phrase
                    self._merge_unmarked = True
                    break
            if self.cand_merge is None:
                self.boundary.insert(prev_key, self.z - 1)
        if self.cand_merge is None:
            for query in (self.lex_smaller_phrase, self.lex_greater_phrase):
                self.probe = self.end_lex
                key, phrase, length = query()
                if phrase != 0 and length >= lz:
                    self.cand_extend = phrase

    def run(self):
        """Step through the whole input and return the parsing."""
        while self.pos < len(self.data):
            self.step()
        return Parsing(list(self.phrases), len(self.data))
