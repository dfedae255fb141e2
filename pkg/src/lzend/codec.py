"""On-disk format, decoder, and random-access extraction.

Stream layout (everything little-endian, no padding):

    magic "LZE1" | n u64 | z u64 | z records of (source u64, length u64, ext u8)

The format is fixed-width on purpose: bit-exact roundtrips are the
contract here, not compactness.  decode() rebuilds the whole string;
extract() resolves an arbitrary range by chasing phrase copy chains, so
its cost scales with the range length plus the longest chain rather
than with n.
"""

import struct
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .parser import Parsing, Phrase

MAGIC = b"LZE1"

_HEADER = struct.Struct("<QQ")
_RECORD = np.dtype([("source", "<u8"), ("length", "<u8"), ("ext", "u1")])


class FormatError(ValueError):
    """Malformed LZE1 stream."""


class BadMagicError(FormatError):
    pass


class TruncatedStreamError(FormatError):
    pass


class PhraseValidityError(FormatError):
    """A record violates the phrase rules (source >= own index, zero
    length, or a copy-less phrase longer than one byte)."""


class LengthMismatchError(FormatError):
    """Phrase lengths do not sum to the declared input length."""


class IntegrityError(ValueError):
    """A parsing asks for a copy its own prefix cannot supply."""


class OutOfRangeError(ValueError):
    """Extraction range outside the decoded string."""


def serialize(parsing):
    """Encode a parsing as an LZE1 byte stream."""
    z = len(parsing.phrases)
    records = np.empty(z, _RECORD)
    records["source"] = np.fromiter((p.source for p in parsing.phrases), np.uint64, z)
    records["length"] = np.fromiter((p.length for p in parsing.phrases), np.uint64, z)
    records["ext"] = np.fromiter((p.ext for p in parsing.phrases), np.uint8, z)
    return MAGIC + _HEADER.pack(parsing.n, z) + records.tobytes()


def deserialize(blob):
    """Decode an LZE1 byte stream, validating the phrase rules."""
    blob = bytes(blob)
    if len(blob) < len(MAGIC):
        raise TruncatedStreamError(f"stream of {len(blob)} bytes is shorter than the magic")
    if blob[:4] != MAGIC:
        raise BadMagicError(f"bad magic {blob[:4]!r}")
    if len(blob) < 20:
        raise TruncatedStreamError(f"stream of {len(blob)} bytes has no complete header")
    n, z = _HEADER.unpack_from(blob, 4)
    expected = 20 + 17 * z
    if len(blob) < expected:
        raise TruncatedStreamError(f"expected {expected} bytes, got {len(blob)}")
    if len(blob) > expected:
        raise FormatError(f"{len(blob) - expected} trailing bytes after {z} records")
    if z > n:
        raise LengthMismatchError(f"{z} phrases cannot cover {n} bytes")
    records = np.frombuffer(blob, _RECORD, offset=20)
    sources = records["source"]
    lengths = records["length"]
    if np.any(sources >= np.arange(1, z + 1, dtype=np.uint64)):
        raise PhraseValidityError("phrase source must point at an earlier phrase")
    if np.any(lengths < 1) or np.any(lengths > max(n, 1)):
        raise PhraseValidityError("phrase lengths must be in [1, n]")
    if np.any((sources == 0) & (lengths > 1)):
        raise PhraseValidityError("a phrase with no source must have length 1")
    if int(lengths.sum(dtype=np.uint64)) != n:
        raise LengthMismatchError("phrase lengths do not sum to the input length")
    phrases = [
        Phrase(int(a), int(b), int(c))
        for a, b, c in zip(sources, lengths, records["ext"])
    ]
    return Parsing(phrases, n)


def decode(parsing):
    """Rebuild the original byte string from a parsing."""
    n = parsing.n
    if sum(p.length for p in parsing.phrases) != n:
        raise IntegrityError("phrase lengths do not sum to the input length")
    out = np.empty(n, np.uint8)
    ends = []
    pos = 0
    for p in parsing.phrases:
        copy = p.length - 1
        if copy > 0:
            if not 1 <= p.source <= len(ends):
                raise IntegrityError(f"phrase source {p.source} is not an earlier phrase")
            src_end = ends[p.source - 1]
            start = src_end - copy + 1
            if start < 0:
                raise IntegrityError(
                    f"copy of {copy} bytes exceeds the prefix ending at {src_end}"
                )
            out[pos : pos + copy] = out[start : src_end + 1]
            pos += copy
        out[pos] = p.ext
        pos += 1
        ends.append(pos - 1)
    return out.tobytes()


@dataclass(frozen=True)
class PhraseBoundaries:
    """Absolute end positions of every phrase (strictly increasing;
    the last one is n-1).  Supports the binary searches extract() does."""

    ends: list

    @classmethod
    def from_parsing(cls, parsing):
        ends = []
        pos = 0
        for p in parsing.phrases:
            pos += p.length
            ends.append(pos - 1)
        if parsing.phrases and ends[-1] != parsing.n - 1:
            raise IntegrityError("phrase lengths do not sum to the input length")
        return cls(ends)


@dataclass
class ExtractStats:
    """Optional counters filled in by extract()."""

    max_chain: int = 0
    segments: int = 0


def extract(parsing, bounds, start, length, stats=None):
    """Decode just decode(parsing)[start : start+length].

    Works over a worklist of (range, output offset) segments: extension
    bytes resolve immediately, copy parts remap the rest of the segment
    to the earlier range it was copied from.
    """
    if start < 0 or length < 0 or start + length > parsing.n:
        raise OutOfRangeError(
            f"range [{start}, {start + length}) outside input of {parsing.n} bytes"
        )
    out = bytearray(length)
    if length == 0:
        return bytes(out)
    ends = bounds.ends
    phrases = parsing.phrases
    max_chain = 0
    segments = 0
    work = [(start, length, 0, 1)]
    while work:
        a, m, o, depth = work.pop()
        if depth > max_chain:
            max_chain = depth
        while m > 0:
            segments += 1
            last = a + m - 1
            j = bisect_left(ends, last)
            p = phrases[j]
            begin = ends[j - 1] + 1 if j > 0 else 0
            lo = a if a > begin else begin
            if last == ends[j]:
                out[o + (last - a)] = p.ext
                last -= 1
                m -= 1
                if last < lo:
                    continue
            # remap the copy-part piece [lo, last] to its source range
            shift = (ends[j] - 1) - ends[p.source - 1]
            work.append((lo - shift, last - lo + 1, o + (lo - a), depth + 1))
            m = lo - a
    if stats is not None:
        stats.max_chain = max_chain
        stats.segments = segments
    return bytes(out)
