"""Threshold table for the reference two-pass algorithm (built from the full LCP)."""

from __future__ import annotations

import numpy as np

from .rlbwt import RlBwt
from .suffix import SuffixStructures


class ThresholdTable:
    """``positions[k]`` is the first-minimum LCP row between the c-run at
    ``crun_run[k]`` and the next c-run of the same character. Entries for
    the last run of each character are -1. Indexed like ``RlBwt.crun_run``."""

    def __init__(self, positions):
        self.positions = np.ascontiguousarray(positions, dtype=np.int64)

    def lookup(self, k: int) -> int:
        return int(self.positions[k])

    def __len__(self):
        return int(np.count_nonzero(self.positions >= 0))


def build_thresholds(ss: SuffixStructures, rl: RlBwt) -> ThresholdTable:
    lcp = ss.lcp
    out = np.full(rl.r, -1, dtype=np.int64)
    for c in range(256):
        lo, hi = int(rl.char_ptr[c]), int(rl.char_ptr[c + 1])
        for k in range(lo, hi - 1):
            r1, r2 = rl.crun_run[k], rl.crun_run[k + 1]
            q1 = rl.run_heads[r1] + rl.run_lens[r1] - 1
            q2 = rl.run_heads[r2]
            out[k] = q1 + 1 + int(np.argmin(lcp[q1 + 1:q2 + 1]))
    return ThresholdTable(out)
