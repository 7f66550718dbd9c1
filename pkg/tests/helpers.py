"""Random text generators shared by the test modules."""

import os

SEED = int(os.environ.get("MSIDX_SEED", "20201016"))
ALPHABETS = {2: b"AC", 4: b"ACGT", 16: bytes(range(ord("a"), ord("a") + 16))}


def random_bytes(rng, n, alphabet=b"ACGT"):
    return bytes(rng.choice(alphabet) for _ in range(n))


def repetitive_bytes(rng, n, alphabet=b"ACGT", copies=8, mutation=0.01):
    """``copies`` mutated versions of one random seed string, truncated to n."""
    base = random_bytes(rng, max(1, n // copies + 1), alphabet)
    out = bytearray()
    while len(out) < n:
        for b in base:
            out.append(rng.choice(alphabet) if rng.random() < mutation else b)
    return bytes(out[:n])


def mutated_substring(rng, s, m, alphabet, rate=0.05):
    a = rng.randrange(len(s))
    piece = bytearray(s[a:a + m])
    for k in range(len(piece)):
        if rng.random() < rate:
            piece[k] = rng.choice(alphabet)
    return bytes(piece) or s[:1]


def check_valid(t, pattern, ms):
    """Each entry is a real occurrence and cannot be extended to the right."""
    d = t.data
    for i, e in enumerate(ms):
        if e.len == 0:
            assert e.pos is None
            assert bytes([pattern[i]]) not in d
            continue
        assert d[e.pos:e.pos + e.len] == pattern[i:i + e.len]
        if i + e.len < len(pattern):
            assert pattern[i:i + e.len + 1] not in d


# one line per acceptance criterion, echoed again in the terminal summary
RESULTS: list[str] = []
