"""Shared corpus builders for the test suite."""

import itertools
import random

import pytest


def all_strings(alphabet, max_len, min_len=1):
    """Every string over the alphabet with min_len <= length <= max_len."""
    for length in range(min_len, max_len + 1):
        for tup in itertools.product(alphabet, repeat=length):
            yield bytes(tup)


def seeded_random_strings(count, max_len, seed):
    """Random byte strings over a mix of alphabet sizes, reproducibly."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randrange(0, max_len + 1)
        sigma = rng.choice((1, 2, 3, 4, 16, 256))
        out.append(bytes(rng.randrange(sigma) for _ in range(n)))
    return out


def fibonacci_words(max_len):
    """Fibonacci words (a, ab, aba, abaab, ...) up to max_len, plus the
    max_len prefix of the next one."""
    a, b = b"a", b"ab"
    words = [a]
    while len(b) <= max_len:
        words.append(b)
        a, b = b, b + a
    words.append(b[:max_len])
    return words


def periodic_strings(total, seed=0):
    """Short random words tiled out to roughly `total` bytes."""
    rng = random.Random(seed)
    out = []
    for wlen in (1, 3, 16, 257):
        word = bytes(rng.randrange(4) for _ in range(wlen))
        reps = -(-total // wlen)
        out.append((word * reps)[:total])
    return out


@pytest.fixture(scope="session")
def worked_example():
    return b"abaabaa$"
