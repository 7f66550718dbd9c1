"""Run-length BWT: rank/select/LF over runs plus SA samples at run boundaries."""

from __future__ import annotations

from bisect import bisect_right
from typing import Optional

import numpy as np


class RankOutOfRange(IndexError):
    pass


class NotABoundary(ValueError):
    pass


class BothNone(LookupError):
    """The queried character does not occur in the BWT at all."""


class RlBwt:
    """Run-length encoded BWT.

    Storage is O(r): run heads, run characters, run lengths, and the SA
    values at the first and last row of every run. Per-character run lists
    and the C array are derived on load.
    """

    def __init__(self, run_chars, run_lens, sa_start, sa_end):
        self.run_chars = np.ascontiguousarray(run_chars, dtype=np.uint8)
        self.run_lens = np.ascontiguousarray(run_lens, dtype=np.int64)
        self.sa_start = np.ascontiguousarray(sa_start, dtype=np.int64)
        self.sa_end = np.ascontiguousarray(sa_end, dtype=np.int64)
        r = len(self.run_chars)
        if not (len(self.run_lens) == len(self.sa_start) == len(self.sa_end) == r):
            raise ValueError("run arrays disagree in length")
        if r and np.any(self.run_chars[1:] == self.run_chars[:-1]):
            raise ValueError("adjacent runs share a character")
        if np.any(self.run_lens < 1):
            raise ValueError("empty run")
        self.r = r
        self.n = int(self.run_lens.sum())
        self.run_heads = np.zeros(r, dtype=np.int64)
        if r:
            self.run_heads[1:] = np.cumsum(self.run_lens)[:-1]

        counts = np.zeros(256, dtype=np.int64)
        np.add.at(counts, self.run_chars, self.run_lens)
        self.C = np.zeros(257, dtype=np.int64)
        self.C[1:] = np.cumsum(counts)
        # runs grouped by character, in BWT order within each group
        order = np.argsort(self.run_chars, kind="stable").astype(np.int64)
        per_char = np.bincount(self.run_chars, minlength=256)
        self.char_ptr = np.zeros(257, dtype=np.int64)
        self.char_ptr[1:] = np.cumsum(per_char)
        self.crun_run = order
        cum = np.zeros(r, dtype=np.int64)
        lens_sorted = self.run_lens[order]
        for c in np.flatnonzero(per_char):
            lo, hi = self.char_ptr[c], self.char_ptr[c + 1]
            seg = lens_sorted[lo:hi]
            cum[lo + 1:hi] = np.cumsum(seg)[:-1]
        self.crun_cum = cum

        # list mirrors for the Python-level query API
        self._heads = self.run_heads.tolist()
        self._chars = self.run_chars.tolist()
        self._lens = self.run_lens.tolist()
        self._ptr = self.char_ptr.tolist()
        self._crun = self.crun_run.tolist()
        self._ccum = self.crun_cum.tolist()

    @classmethod
    def from_bwt(cls, bwt: bytes, sa) -> RlBwt:
        a = np.frombuffer(bwt, dtype=np.uint8)
        sa = np.asarray(sa, dtype=np.int64)
        heads = np.flatnonzero(np.r_[True, a[1:] != a[:-1]])
        ends = np.r_[heads[1:] - 1, len(a) - 1]
        return cls(a[heads], ends - heads + 1, sa[heads], sa[ends])

    # -- queries ---------------------------------------------------------

    def run_of(self, q: int) -> int:
        if not 0 <= q < self.n:
            raise IndexError(q)
        return bisect_right(self._heads, q) - 1

    def char_at(self, q: int) -> int:
        return self._chars[self.run_of(q)]

    def occurrences(self, c: int) -> int:
        return int(self.C[c + 1] - self.C[c])

    def rank(self, c: int, y: int) -> int:
        """Number of copies of ``c`` in BWT[0..y], inclusive."""
        k = self.run_of(y)
        lo, hi = self._ptr[c], self._ptr[c + 1]
        j = bisect_right(self._crun, k, lo, hi)
        if j == lo:
            return 0
        run = self._crun[j - 1]
        if run == k:
            return self._ccum[j - 1] + y - self._heads[k] + 1
        return self._ccum[j - 1] + self._lens[run]

    def select(self, c: int, k: int) -> int:
        """BWT position of the ``k``-th (1-based) copy of ``c``."""
        if not 1 <= k <= self.occurrences(c):
            raise RankOutOfRange(f"select({c}, {k}) with {self.occurrences(c)} copies")
        lo, hi = self._ptr[c], self._ptr[c + 1]
        j = bisect_right(self._ccum, k - 1, lo, hi) - 1
        run = self._crun[j]
        return self._heads[run] + (k - 1 - self._ccum[j])

    def lf(self, q: int) -> int:
        c = self.char_at(q)
        return int(self.C[c]) + self.rank(c, q) - 1

    def sa_at_boundary(self, q: int) -> int:
        k = self.run_of(q)
        if q == self._heads[k]:
            return int(self.sa_start[k])
        if q == self._heads[k] + self._lens[k] - 1:
            return int(self.sa_end[k])
        raise NotABoundary(f"row {q} is inside run {k}")

    def pred_succ_occurrence(self, c: int, q: int) -> tuple[Optional[int], Optional[int]]:
        """Last copy of ``c`` at or before ``q`` and first copy after ``q``."""
        lo, hi = self._ptr[c], self._ptr[c + 1]
        if lo == hi:
            raise BothNone(f"byte {c} does not occur")
        k = self.run_of(q)
        j = bisect_right(self._crun, k, lo, hi)
        before = after = None
        if j > lo:
            run = self._crun[j - 1]
            before = self._heads[run] + self._lens[run] - 1 if run != k else q
        if j < hi:
            after = self._heads[self._crun[j]]
        return before, after

    def to_bytes(self) -> bytes:
        """Expand back to the plain BWT (tests and debugging only)."""
        return bytes(np.repeat(self.run_chars, self.run_lens))
