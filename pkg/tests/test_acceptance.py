"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
happen; they are also repeated in the terminal summary.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from helpers import (ALPHABETS, RESULTS, SEED, check_valid, mutated_substring, random_bytes,
                     repetitive_bytes)
from msidx import cli, suffix
from msidx.engine import MsStats, StreamSession, ms_one_pass, ms_two_pass, stream_open
from msidx.index import MsIndex, build_index
from msidx.types import validate_text

VARIANTS = ("std", "naive", "heur", "twopass")


@contextmanager
def criterion(k, title, budget=None):
    t0 = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - t0
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    except BaseException as e:
        line = f"FAIL  criterion {k:2d}: {title} ({type(e).__name__}: {e})"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS  criterion {k:2d}: {title} ({time.perf_counter() - t0:.2f}s)"
    RESULTS.append(line)
    print(line)


def run_ms(index, pattern, variant, stats=None):
    if variant == "twopass":
        return ms_two_pass(index, pattern, stats)
    return ms_one_pass(index, pattern, variant, stats)


def all_pairs_lce(data: bytes) -> np.ndarray:
    """Full LCE table by the diagonal recurrence L[i][j] = L[i+1][j+1] + 1."""
    a = np.frombuffer(data, dtype=np.uint8)
    n = len(a)
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        eq = a == a[i]
        table[i, :n] = np.where(eq, table[i + 1, 1:n + 1] + 1, 0)
    return table[:n, :n]


# -- probe suites for criteria 1-4, reused by the serialization check --------

def probe_example(index):
    return [tuple(e) for e in ms_one_pass(index, b"GTTAC")]


def probe_ms(index, patterns):
    return [[tuple(e) for e in run_ms(index, p, v)] for p in patterns for v in VARIANTS]


def probe_lce(index, pairs):
    return [index.slp.lce(i, j) for i, j in pairs] + [index.slp.lce_naive(i, j) for i, j in pairs]


def probe_locate(index, pattern):
    loc = index.locator()
    ms = ms_one_pass(index, pattern)
    out = [(loc.phi(p), loc.phi_inv(p), loc.plcp(p)) for p in range(index.n)]
    for i in range(len(pattern)):
        for j in range(i, min(i + 9, len(pattern))):
            out.append(sorted(loc.locate(ms, i, j)))
    return out


# -- criteria ---------------------------------------------------------------

def test_c01_cattag_example():
    with criterion(1, "CATTAG / GTTAC example", budget=1.0):
        t = validate_text(b"CATTAG")
        idx = build_index(t, 4, 11, with_thresholds=True)
        for v in VARIANTS:
            ms = run_ms(idx, b"GTTAC", v)
            assert [e.len for e in ms] == [1, 3, 2, 1, 1], v
            assert ms[3].pos in (4, 1)
            check_valid(t, b"GTTAC", ms)


def test_c02_ms_oracle():
    rng = random.Random(SEED + 2)
    with criterion(2, "MS equals oracle, all variants, >= 500 pairs", budget=60.0):
        pairs = 0
        absent = 0
        while pairs < 520:
            sigma = rng.choice((2, 4, 16))
            alpha = ALPHABETS[sigma]
            n = rng.randint(1, 5000)
            gen = rng.choice((random_bytes, repetitive_bytes))
            s = gen(rng, n, alpha)
            t = validate_text(s)
            idx = build_index(t, rng.choice((4, 6)), rng.choice((11, 23)), with_thresholds=True)
            outside = bytes([b for b in b"ACGTZ" if b not in s][:1])
            for _ in range(8):
                m = rng.randint(1, 500)
                kind = rng.random()
                if kind < 0.5:
                    pat = mutated_substring(rng, s, m, alpha)
                elif kind < 0.75:
                    pat = random_bytes(rng, m, alpha)
                else:
                    # sprinkle a byte absent from the text
                    pat = bytearray(mutated_substring(rng, s, m, alpha))
                    for _ in range(rng.randint(1, 3)):
                        pat[rng.randrange(len(pat))] = outside[0]
                    pat = bytes(pat)
                    absent += 1
                want = [e.len for e in suffix.oracle_ms(t, pat)]
                for v in VARIANTS:
                    ms = run_ms(idx, pat, v)
                    assert [e.len for e in ms] == want, (v, s, pat)
                    check_valid(t, pat, ms)
                pairs += 1
        assert absent > 0


def test_c03_lce_oracle():
    rng = random.Random(SEED + 3)
    with criterion(3, "LCE exhaustive n <= 2000, 1e5 pairs at n = 1e5", budget=60.0):
        for n, gen, sigma in ((300, random_bytes, 2), (1200, repetitive_bytes, 16),
                              (1999, repetitive_bytes, 4)):
            t = validate_text(gen(rng, n, ALPHABETS[sigma]))
            slp = build_index(t, 4, 11).slp
            table = all_pairs_lce(t.data)
            if n <= 300:
                # the table itself against the direct oracle
                for i in range(t.n):
                    for j in range(t.n):
                        assert table[i, j] == suffix.oracle_lce(t, i, j)
            for i in range(t.n):
                row = table[i].tolist()
                assert [slp.lce(i, j) for j in range(t.n)] == row
                assert [slp.lce_naive(i, j) for j in range(t.n)] == row

        t = validate_text(repetitive_bytes(rng, 100_000 - 1))
        assert t.n == 100_000
        slp = build_index(t, 10, 100).slp
        for _ in range(100_000):
            i, j = rng.randrange(t.n), rng.randrange(t.n)
            want = suffix.oracle_lce(t, i, j)
            assert slp.lce(i, j) == want
            assert slp.lce_naive(i, j) == want


def test_c04_locator():
    rng = random.Random(SEED + 4)
    with criterion(4, "phi / phi_inv / plcp exhaustive, locate set-equality"):
        for n, sigma in ((3000, 4), (2999, 2), (2500, 16)):
            t = validate_text(repetitive_bytes(rng, n - 1, ALPHABETS[sigma]))
            ss = suffix.build(t)
            loc = build_index(t, 4, 11, with_locate=True).locator()
            sa = ss.sa.tolist()
            for r in range(t.n):
                p = sa[r]
                assert loc.phi(p) == (sa[r - 1] if r else None)
                assert loc.phi_inv(p) == (sa[r + 1] if r + 1 < t.n else None)
                assert loc.plcp(p) == ss.plcp[p]

        for _ in range(110):
            sigma = rng.choice((2, 4, 16))
            alpha = ALPHABETS[sigma]
            gen = rng.choice((random_bytes, repetitive_bytes))
            s = gen(rng, rng.randint(1, 600), alpha)
            t = validate_text(s)
            idx = build_index(t, 4, 11, with_locate=True)
            loc = idx.locator()
            pat = mutated_substring(rng, s, rng.randint(1, 40), alpha + b"Z")
            ms = ms_one_pass(idx, pat)
            for i in range(len(pat)):
                for j in range(i, min(i + 9, len(pat))):
                    got = list(loc.locate(ms, i, j))
                    assert len(got) == len(set(got))
                    assert set(got) == suffix.oracle_occurrences(t, pat[i:j + 1])


def test_c05_streaming(tmp_path):
    rng = random.Random(SEED + 5)
    with criterion(5, "streaming emits per byte, constant state, equals oracle"):
        # state is structural: the row cursor and the last entry, nothing else
        assert StreamSession.__slots__ == ("_index", "_variant", "q", "last")
        assert not hasattr(StreamSession(build_index(validate_text(b"ab"), reversed=True)),
                           "__dict__")

        for _ in range(200):
            sigma = rng.choice((2, 4, 16))
            alpha = ALPHABETS[sigma]
            s = rng.choice((random_bytes, repetitive_bytes))(rng, rng.randint(1, 2000), alpha)
            t = validate_text(s)
            idx = build_index(t, 4, 11, reversed=True)
            stream = mutated_substring(rng, s, rng.randint(1, 300), alpha + b"Z")
            sess = stream_open(idx, rng.choice(("std", "naive", "heur")))
            for k, c in enumerate(stream):
                e = sess.push(c)
                want = suffix.oracle_suffix_match(t, stream[:k + 1])
                assert e.len == want
                if want:
                    assert s[e.pos:e.pos + e.len] == stream[k + 1 - want:k + 1]

        # end to end: each line arrives before the next byte is written
        src = tmp_path / "t.txt"
        src.write_bytes(b"banana")
        out = tmp_path / "t.idx"
        assert cli.main(["build", str(src), "-o", str(out), "--reversed"]) == 0
        proc = subprocess.Popen([sys.executable, "-m", "msidx", "stream", str(out)],
                                stdin=subprocess.PIPE, stdout=subprocess.PIPE)
        try:
            lens = []
            for c in b"bananas":
                proc.stdin.write(bytes([c]))
                proc.stdin.flush()
                lens.append(int(proc.stdout.readline().split(b"\t")[1]))
        finally:
            proc.stdin.close()
            proc.wait(timeout=10)
        assert lens == [1, 2, 3, 4, 5, 6, 0]


@pytest.mark.parametrize("w,p", [(4, 11), (10, 100)])
def test_c06_grammar_round_trip(w, p):
    rng = random.Random(SEED + 6 + w)
    with criterion(6, f"grammar round trip, 200 texts, w={w} p={p}"):
        for _ in range(200):
            sigma = rng.choice((2, 4, 16))
            gen = rng.choice((random_bytes, repetitive_bytes))
            t = validate_text(gen(rng, rng.randint(1, 4095), ALPHABETS[sigma]))
            slp = build_index(t, w, p).slp
            d = t.data
            assert slp.n == t.n
            assert slp.expand() == d
            assert bytes(slp.access(i) for i in range(t.n)) == d
            for i in range(t.n):
                assert slp.extract(i, t.n - i) == d[i:]
                k = rng.randint(0, t.n - i)
                assert slp.extract(i, k) == d[i:i + k]


def test_c07_compression():
    rng = random.Random(SEED + 7)
    with criterion(7, "repetitive text: r and rules each at least 2x smaller"):
        base = random_bytes(rng, 1024)
        rep = validate_text((base * 16)[:-1])
        rnd = validate_text(random_bytes(rng, 16383))
        assert rep.n == rnd.n == 16384
        a, b = build_index(rep), build_index(rnd)
        print(f"      r: {a.r} vs {b.r}, rules: {a.rule_count} vs {b.rule_count}")
        assert 2 * a.r <= b.r
        assert 2 * a.rule_count <= b.rule_count


def test_c08_efficiency_counters():
    rng = random.Random(SEED + 8)
    with criterion(8, "heur calls <= std per query, std compares < naive"):
        std_cmps = naive_cmps = 0
        for _ in range(10):
            alpha = ALPHABETS[rng.choice((2, 4, 16))]
            s = repetitive_bytes(rng, 8000, alpha, copies=16)
            idx = build_index(validate_text(s))
            for _ in range(20):
                pat = mutated_substring(rng, s, 500, alpha, rate=0.02)
                st = {v: MsStats() for v in ("std", "naive", "heur")}
                for v in st:
                    ms_one_pass(idx, pat, v, st[v])
                assert st["heur"].lce_calls <= st["std"].lce_calls
                std_cmps += st["std"].char_compares
                naive_cmps += st["naive"].char_compares
        print(f"      compares: std {std_cmps}, naive {naive_cmps}")
        assert std_cmps < naive_cmps


def test_c09_two_pass_accesses():
    rng = random.Random(SEED + 9)
    with criterion(9, "pass-2 random accesses <= 4m"):
        for _ in range(60):
            sigma = rng.choice((2, 4, 16))
            alpha = ALPHABETS[sigma]
            s = rng.choice((random_bytes, repetitive_bytes))(rng, rng.randint(1, 5000), alpha)
            idx = build_index(validate_text(s), 4, 11, with_thresholds=True)
            for _ in range(5):
                pat = mutated_substring(rng, s, rng.randint(1, 500), alpha + b"Z")
                st = MsStats()
                ms_two_pass(idx, pat, st)
                assert st.accesses <= 4 * len(pat)


def test_c10_serialization(tmp_path):
    rng = random.Random(SEED + 10)
    with criterion(10, "serialization round trip, version mismatch exits 3"):
        def reload(idx):
            path = tmp_path / "x.idx"
            idx.save(path)
            return MsIndex.load(path)

        idx = build_index(validate_text(b"CATTAG"), 4, 11, with_thresholds=True)
        assert probe_example(reload(idx)) == probe_example(idx)

        for _ in range(6):
            alpha = ALPHABETS[rng.choice((2, 4, 16))]
            s = repetitive_bytes(rng, rng.randint(1, 3000), alpha)
            t = validate_text(s)
            idx = build_index(t, 4, 11, with_locate=True, with_thresholds=True)
            back = reload(idx)
            pats = [mutated_substring(rng, s, rng.randint(1, 200), alpha + b"Z")
                    for _ in range(5)]
            assert probe_ms(back, pats) == probe_ms(idx, pats)
            pairs = [(rng.randrange(t.n), rng.randrange(t.n)) for _ in range(500)]
            assert probe_lce(back, pairs) == probe_lce(idx, pairs)
            assert probe_locate(back, pats[0]) == probe_locate(idx, pats[0])

        path = tmp_path / "v.idx"
        data = build_index(validate_text(b"banana")).to_bytes()
        path.write_bytes(b"MSIDX002" + data[8:])
        assert cli.main(["stats", str(path)]) == cli.EXIT_FORMAT == 3
