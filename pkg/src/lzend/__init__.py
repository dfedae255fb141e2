"""LZ-End compression: fast parsing, a fixed-width codec, and random access.

The parsing factors a byte string into phrases that each copy the
longest previous string ending exactly at an earlier phrase boundary,
plus one literal byte.  That end-aligned rule is what makes extracting
arbitrary substrings cheap without decoding the whole input.
"""

from .boundary_dict import BoundaryDict
from .codec import (
    BadMagicError,
    ExtractStats,
    FormatError,
    IntegrityError,
    LengthMismatchError,
    OutOfRangeError,
    PhraseBoundaries,
    PhraseValidityError,
    TruncatedStreamError,
    decode,
    deserialize,
    extract,
    serialize,
)
from .oracle import naive_parse
from .parser import (
    ParseConfig,
    ParseState,
    ParseStep,
    Parsing,
    Phrase,
    parse,
    parse_indexed,
    parse_steps,
)
from .text_index import TextIndex, build, lcp_array, suffix_array

__version__ = "0.1.0"

__all__ = [
    "BadMagicError",
    "BoundaryDict",
    "ExtractStats",
    "FormatError",
    "IntegrityError",
    "LengthMismatchError",
    "OutOfRangeError",
    "ParseConfig",
    "ParseState",
    "ParseStep",
    "Parsing",
    "Phrase",
    "PhraseBoundaries",
    "PhraseValidityError",
    "TextIndex",
    "TruncatedStreamError",
    "build",
    "decode",
    "deserialize",
    "extract",
    "lcp_array",
    "naive_parse",
    "parse",
    "parse_indexed",
    "parse_steps",
    "serialize",
    "suffix_array",
]
