import numpy as np
import pytest

from helpers import ALPHABETS, mutated_substring, random_bytes, repetitive_bytes
from msidx import suffix
from msidx.engine import ms_two_pass
from msidx.index import build_index
from msidx.rlbwt import RlBwt
from msidx.thresholds import build_thresholds
from msidx.types import validate_text


def test_banana_threshold():
    ss = suffix.build(validate_text(b"banana"))
    rl = RlBwt.from_bwt(ss.bwt, ss.sa)
    table = build_thresholds(ss, rl)
    a = ord("a")
    k = int(rl.char_ptr[a])
    assert table.lookup(k) == 1
    # 'b' and 'n' have a single run each: no pair, no entry
    for c in (ord("b"), ord("n")):
        assert table.lookup(int(rl.char_ptr[c])) == -1
    assert len(table) == 1


@pytest.mark.parametrize("sigma", [2, 4, 16])
def test_thresholds_against_range_scan(rng, sigma):
    t = validate_text(random_bytes(rng, 3000, ALPHABETS[sigma]))
    ss = suffix.build(t)
    rl = RlBwt.from_bwt(ss.bwt, ss.sa)
    table = build_thresholds(ss, rl)
    lcp = ss.lcp.tolist()
    for c in range(256):
        lo, hi = int(rl.char_ptr[c]), int(rl.char_ptr[c + 1])
        for k in range(lo, hi - 1):
            r1, r2 = rl.crun_run[k], rl.crun_run[k + 1]
            q1 = int(rl.run_heads[r1] + rl.run_lens[r1] - 1)
            q2 = int(rl.run_heads[r2])
            window = lcp[q1 + 1:q2 + 1]
            t_ = table.lookup(k)
            assert lcp[t_] == min(window)
            assert t_ == q1 + 1 + window.index(min(window))
        if hi > lo:
            assert table.lookup(hi - 1) == -1


def test_threshold_decision_picks_longer_extension(rng):
    """The threshold choice always lands on a candidate with the larger
    LCE against the current match; on exact ties either side is fine."""
    s = repetitive_bytes(rng, 3000, ALPHABETS[4], copies=6, mutation=0.03)
    t = validate_text(s)
    ss = suffix.build(t)
    idx = build_index(t, 4, 11, with_thresholds=True)
    decisions = 0
    for _ in range(40):
        pat = mutated_substring(rng, s, 300, ALPHABETS[4], 0.08)
        trace = []
        ms_two_pass(idx, pat, trace=trace)
        for q, q1, q2, pos, took_prev in trace:
            l1 = suffix.oracle_lce(t, int(ss.sa[q1]), pos)
            l2 = suffix.oracle_lce(t, int(ss.sa[q2]), pos)
            if l1 != l2:
                assert took_prev == (l1 > l2)
            decisions += 1
    assert decisions > 0
