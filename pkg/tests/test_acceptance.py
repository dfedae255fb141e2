"""Acceptance suite.

One test per release criterion; each prints a PASS/FAIL line (run with
`pytest tests/test_acceptance.py -v -s` to see them as they complete).
The corpus shared by several criteria is every binary string of length
<= 14, every ternary string of length <= 9, and 1000 seeded random byte
strings of length <= 256.
"""

import contextlib
import random
import time

import pytest

from lzend import codec
from lzend.cli import gen_corpus, main, run_bench
from lzend.oracle import naive_parse
from lzend.parser import (
    BEGIN,
    EXTEND,
    MERGE,
    ParseConfig,
    ParseState,
    Phrase,
    parse,
    parse_steps,
)
from lzend.text_index import build, lcp_array, suffix_array

from conftest import all_strings, fibonacci_words, periodic_strings, seeded_random_strings

A, B, DOLLAR = ord("a"), ord("b"), ord("$")
EXAMPLE = b"abaabaa$"
EXAMPLE_PHRASES = [Phrase(0, 1, A), Phrase(0, 1, B), Phrase(1, 2, A), Phrase(3, 4, DOLLAR)]


@contextlib.contextmanager
def criterion(number, name):
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({name}): FAIL")
        raise
    print(f"criterion {number} ({name}): PASS")


def corpus_strings():
    yield from all_strings(b"ab", 14)
    yield from all_strings(b"abc", 9)
    yield from seeded_random_strings(1000, 256, seed=2024)


@pytest.fixture(scope="module")
def corpus_parsings():
    """(string, parse result) for the whole corpus, with the wall time of
    the oracle-equivalence work (both parsers plus comparison)."""
    parse(EXAMPLE)  # warm the compiled kernels outside the timed region
    results = []
    start = time.perf_counter()
    for data in corpus_strings():
        got = parse(data)
        want = naive_parse(data)
        assert [(p.length, p.ext) for p in got.phrases] == [
            (p.length, p.ext) for p in want.phrases
        ], data
        results.append((data, got))
    elapsed = time.perf_counter() - start
    return results, elapsed


def test_criterion_1_worked_example_exact():
    with criterion(1, "worked example, per-step actions, < 1 ms"):
        parsing, steps = parse_steps(EXAMPLE)
        assert parsing.phrases == EXAMPLE_PHRASES
        assert [(s.pos, s.action, s.phrase) for s in steps] == [
            (0, BEGIN, Phrase(0, 1, A)),
            (1, BEGIN, Phrase(0, 1, B)),
            (2, BEGIN, Phrase(0, 1, A)),
            (3, EXTEND, Phrase(1, 2, A)),
            (4, BEGIN, Phrase(0, 1, B)),
            (5, EXTEND, Phrase(2, 2, A)),
            (6, BEGIN, Phrase(0, 1, A)),
            (7, MERGE, Phrase(3, 4, DOLLAR)),
        ]
        best = float("inf")
        for _ in range(20):
            t0 = time.perf_counter()
            got = parse(EXAMPLE)
            best = min(best, time.perf_counter() - t0)
            assert got.phrases == EXAMPLE_PHRASES
        assert best < 1e-3, f"parse took {best * 1e3:.3f} ms"


def test_criterion_2_index_exact():
    with criterion(2, "suffix array, LCP, rank arrays"):
        assert suffix_array(EXAMPLE[::-1]).tolist() == [0, 7, 4, 1, 5, 2, 6, 3]
        assert lcp_array(EXAMPLE[::-1], suffix_array(EXAMPLE[::-1])).tolist() == [
            0, 0, 1, 4, 1, 3, 0, 2,
        ]
        assert build(EXAMPLE).end_rank.tolist() == [1, 6, 4, 2, 7, 5, 3, 0]


def test_criterion_3_final_step_trace():
    with criterion(3, "final-step predecessor search and merge"):
        state = ParseState(EXAMPLE)
        for _ in range(7):
            state.step()
        assert dict(state.boundary.items()) == {1: 1, 2: 3, 5: 4, 6: 2}
        state.probe = int(state.idx.end_rank[6])
        assert state.lex_smaller_phrase() == (2, 3, 4)
        step = state.step()
        assert step.action == MERGE
        assert step.phrase == Phrase(3, 4, DOLLAR)
        assert dict(state.boundary.items()) == {1: 1, 2: 3, 6: 2}


def test_criterion_4_oracle_equivalence(corpus_parsings):
    results, elapsed = corpus_parsings
    with criterion(4, f"oracle equivalence on {len(results)} strings, {elapsed:.1f}s"):
        assert len(results) == (2**15 - 2) + (3**10 - 3) // 2 + 1000
        assert elapsed < 120.0, f"corpus comparison took {elapsed:.1f}s"


def test_criterion_5_roundtrip(corpus_parsings, tmp_path):
    results, _ = corpus_parsings
    with criterion(5, "decode and CLI roundtrips"):
        for data, parsing in results:
            assert codec.decode(parsing) == data
        big = fibonacci_words(10000) + periodic_strings(100000)
        for data in big:
            assert codec.decode(parse(data)) == data

        # CLI path on the large strings plus a deterministic corpus sample;
        # the CLI delegates to the library, and the no-drift check below
        # pins the two together byte for byte.
        rng = random.Random(5)
        sample = [results[rng.randrange(len(results))][0] for _ in range(300)]
        src = tmp_path / "in.bin"
        packed = tmp_path / "out.lze"
        restored = tmp_path / "back.bin"
        for data in big + sample:
            src.write_bytes(data)
            assert main(["encode", str(src), str(packed), "--verify"]) == 0
            assert packed.read_bytes() == codec.serialize(parse(data))
            assert main(["decode", str(packed), str(restored)]) == 0
            assert restored.read_bytes() == data


def test_criterion_6_length_caps():
    with criterion(6, "phrase-length caps"):
        inputs = seeded_random_strings(120, 256, seed=66) + [EXAMPLE]
        for data in inputs:
            uncapped = parse(data)
            for h in (1, 2, 4, 8, 64):
                capped = parse(data, ParseConfig(max_phrase_len=h))
                assert all(p.length <= h for p in capped.phrases)
                assert codec.decode(capped) == data
                if h == 1:
                    assert len(capped.phrases) == len(data)
            n = len(data)
            for h in (max(n, 1), n + 1):
                assert parse(data, ParseConfig(max_phrase_len=h)).phrases == uncapped.phrases


def test_criterion_7_mode_equivalence(corpus_parsings):
    results, _ = corpus_parsings
    with criterion(7, "merge-first mode matches default"):
        merge_first = ParseConfig(merge_first=True)
        for data, parsing in results:
            assert parse(data, merge_first).phrases == parsing.phrases, data


def test_criterion_8_extraction():
    with criterion(8, "random access equals decode-then-slice"):
        rng = random.Random(88)
        small = [EXAMPLE] + [
            bytes(rng.randrange(rng.choice((2, 4, 256))) for _ in range(rng.randrange(1, 65)))
            for _ in range(60)
        ]
        for data in small:
            parsing = parse(data)
            bounds = codec.PhraseBoundaries.from_parsing(parsing)
            plain = codec.decode(parsing)
            n = len(data)
            for start in range(n + 1):
                for length in range(n - start + 1):
                    assert codec.extract(parsing, bounds, start, length) == plain[start : start + length]

        large = fibonacci_words(10000)[-1:] + periodic_strings(100000)[:2] + [
            bytes(rng.randrange(256) for _ in range(4096))
        ]
        parsings = [(parse(d), d) for d in large]
        for _ in range(10000):
            parsing, data = parsings[rng.randrange(len(parsings))]
            bounds = codec.PhraseBoundaries.from_parsing(parsing)
            n = len(data)
            start = rng.randrange(0, n + 1)
            length = rng.randrange(0, min(n - start, 512) + 1)
            assert codec.extract(parsing, bounds, start, length) == data[start : start + length]


def test_criterion_9_benchmark_scale():
    with criterion(9, "10 MB parses under 60 s, compressibility ordering"):
        run_bench(gen_corpus("random", 1 << 16, 0))  # warm kernels
        size = 10 * 1024 * 1024
        random_figures = run_bench(gen_corpus("random", size, 9))
        periodic_figures = run_bench(gen_corpus("periodic", size, 9))
        for figures in (random_figures, periodic_figures):
            assert figures["n"] == size
            assert figures["parse_seconds"] < 60.0, figures
        assert periodic_figures["ratio"] < random_figures["ratio"]
        print(
            "  random: parse {parse_seconds:.2f}s ratio {ratio:.6f} | ".format(**random_figures)
            + "periodic: parse {parse_seconds:.2f}s ratio {ratio:.6f}".format(**periodic_figures)
        )
