"""Command-line front end.

Subcommands: encode, decode, extract, stats, bench.  stdout carries only
payloads (extract) and stat lines (stats, bench); everything else goes
to stderr.  Exit codes: 0 ok, 1 I/O, 2 format/validation, 3 usage.
"""

import argparse
import random
import sys
import time

from . import codec, text_index
from .parser import ParseConfig, parse_indexed

EXIT_OK = 0
EXIT_IO = 1
EXIT_FORMAT = 2
EXIT_USAGE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_parse_options(sub):
    sub.add_argument(
        "--max-phrase-len",
        type=_positive_int,
        metavar="H",
        help="cap every phrase at H bytes (bounds extraction chains)",
    )
    sub.add_argument(
        "--merge-first",
        action="store_true",
        help="look for merges before extensions (faster on repetitive data)",
    )


def _build_parser():
    parser = _Parser(prog="lzend", description="LZ-End compressor with random access")
    commands = parser.add_subparsers(dest="command", required=True)

    enc = commands.add_parser("encode", help="parse a file and write an LZE1 stream")
    enc.add_argument("input")
    enc.add_argument("output")
    _add_parse_options(enc)
    enc.add_argument(
        "--verify",
        action="store_true",
        help="decode in memory and compare before writing",
    )

    dec = commands.add_parser("decode", help="restore the original file from LZE1")
    dec.add_argument("input")
    dec.add_argument("output")

    ext = commands.add_parser("extract", help="print a byte range of the original")
    ext.add_argument("input")
    ext.add_argument("--start", type=int, required=True)
    ext.add_argument("--len", dest="length", type=int, required=True)

    st = commands.add_parser("stats", help="parse a file and report size figures")
    st.add_argument("input")
    _add_parse_options(st)

    bench = commands.add_parser("bench", help="time the parsing phase on a corpus")
    bench.add_argument(
        "--corpus",
        choices=("random", "runs", "periodic"),
        default="random",
        help="synthetic input family (ignored with --input)",
    )
    bench.add_argument("--size", type=int, default=10 * 1024 * 1024, metavar="BYTES")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--input", dest="infile", help="benchmark a real file instead")
    _add_parse_options(bench)
    return parser


def _config(args):
    return ParseConfig(
        max_phrase_len=getattr(args, "max_phrase_len", None),
        merge_first=getattr(args, "merge_first", False),
    )


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, data):
    with open(path, "wb") as fh:
        fh.write(data)


def gen_corpus(kind, size, seed=0):
    """Synthetic benchmark inputs: uniform bytes, heavy runs, or a short
    random word repeated to fill the size."""
    rng = random.Random(seed)
    if kind == "random":
        return rng.randbytes(size)
    if kind == "runs":
        out = bytearray()
        while len(out) < size:
            out += bytes([rng.randrange(4)]) * rng.randrange(1, 64)
        return bytes(out[:size])
    if kind == "periodic":
        word = rng.randbytes(64)
        reps = -(-size // len(word))
        return (word * reps)[:size]
    raise ValueError(f"unknown corpus kind {kind!r}")


def run_bench(data, config=ParseConfig()):
    """Parse once, timing index construction and the parsing phase
    separately; returns the figures as a dict."""
    t0 = time.perf_counter()
    idx = text_index.build(data)
    t1 = time.perf_counter()
    parsing = parse_indexed(data, idx, config)
    t2 = time.perf_counter()
    n = parsing.n
    z = len(parsing.phrases)
    return {
        "n": n,
        "z": z,
        "ratio": z / n if n else 0.0,
        "maxlen": parsing.max_phrase_len,
        "index_seconds": t1 - t0,
        "parse_seconds": t2 - t1,
    }


def _cmd_encode(args):
    data = _read(args.input)
    parsing = parse_indexed(data, text_index.build(data), _config(args))
    blob = codec.serialize(parsing)
    if args.verify:
        if codec.decode(parsing) != data:
            print("lzend: verification failed, not writing output", file=sys.stderr)
            return EXIT_FORMAT
    _write(args.output, blob)
    return EXIT_OK


def _cmd_decode(args):
    parsing = codec.deserialize(_read(args.input))
    _write(args.output, codec.decode(parsing))
    return EXIT_OK


def _cmd_extract(args):
    parsing = codec.deserialize(_read(args.input))
    bounds = codec.PhraseBoundaries.from_parsing(parsing)
    payload = codec.extract(parsing, bounds, args.start, args.length)
    sys.stdout.buffer.write(payload)
    sys.stdout.buffer.flush()
    return EXIT_OK


def _cmd_stats(args):
    data = _read(args.input)
    parsing = parse_indexed(data, text_index.build(data), _config(args))
    n = parsing.n
    z = len(parsing.phrases)
    ratio = z / n if n else 0.0
    print(f"input bytes (n):        {n}")
    print(f"phrases (z):            {z}")
    print(f"compressibility (z/n):  {ratio:.6f}")
    print(f"longest phrase:         {parsing.max_phrase_len}")
    print(f"n={n} z={z} ratio={ratio:.6f} maxlen={parsing.max_phrase_len}")
    return EXIT_OK


def _cmd_bench(args):
    if args.infile:
        data = _read(args.infile)
        label = args.infile
    else:
        data = gen_corpus(args.corpus, args.size, args.seed)
        label = args.corpus
    figures = run_bench(data, _config(args))
    print(
        "corpus={} n={n} z={z} ratio={ratio:.6f} maxlen={maxlen} "
        "index_seconds={index_seconds:.6f} parse_seconds={parse_seconds:.6f}".format(
            label, **figures
        )
    )
    return EXIT_OK


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "extract": _cmd_extract,
    "stats": _cmd_stats,
    "bench": _cmd_bench,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"lzend: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as err:  # --help
        return int(err.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except OSError as err:
        print(f"lzend: {err}", file=sys.stderr)
        return EXIT_IO
    except (codec.FormatError, codec.IntegrityError, codec.OutOfRangeError, ValueError) as err:
        print(f"lzend: {err}", file=sys.stderr)
        return EXIT_FORMAT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
