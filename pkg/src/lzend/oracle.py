"""Greedy reference parser, used as the ground-truth oracle in tests.

Implements the parsing definition directly with string comparisons and
no index structures: at each phrase start, try every earlier phrase
boundary and every candidate copy length.  Cubic in the worst case; only
meant for short inputs.
"""

from .parser import Parsing, Phrase


def naive_parse(data):
    """LZ-End parsing by direct greedy search.

    At phrase start t, finds the maximum l such that some earlier phrase
    boundary b (a prefix length) satisfies b >= l, t + l < n, and
    data[b-l:b] == data[t:t+l]; emits (p, l+1, data[t+l]) for the
    smallest such boundary index p.
    """
    data = bytes(data)
    n = len(data)
    phrases = []
    bounds = []
    t = 0
    while t < n:
        best_len = 0
        best_src = 0
        limit = n - 1 - t
        for src, b in enumerate(bounds, start=1):
            top = b if b < limit else limit
            l = top
            while l > best_len:
                if data[b - l : b] == data[t : t + l]:
                    break
                l -= 1
            else:
                continue
            best_len = l
            best_src = src
        phrases.append(Phrase(best_src, best_len + 1, data[t + best_len]))
        t += best_len + 1
        bounds.append(t)
    return Parsing(phrases, n)
