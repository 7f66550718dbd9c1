"""Matching statistics: the one-pass LCE algorithm (std / naive / heur), a
per-character streaming session, the two-pass threshold reference, and MEMs.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

from .types import ForbiddenByte, MsEntry, validate_pattern

VARIANTS = {"std": 0, "naive": 1, "heur": 2}


@dataclass
class MsStats:
    steps: int = 0
    lf_hits: int = 0
    lce_calls: int = 0
    char_compares: int = 0
    lce_skips: int = 0
    accesses: int = 0

    @property
    def lf_fraction(self) -> float:
        """Share of steps after the first resolved by a plain LF match."""
        return self.lf_hits / self.steps if self.steps else 1.0

    def add(self, other: MsStats) -> None:
        for f in ("steps", "lf_hits", "lce_calls", "char_compares", "lce_skips", "accesses"):
            setattr(self, f, getattr(self, f) + getattr(other, f))


def _entries(pos, lens) -> list[MsEntry]:
    return [MsEntry(p if ln else None, ln) for p, ln in zip(pos, lens)]


def ms_one_pass(index, pattern: bytes, variant: str = "std",
                stats: Optional[MsStats] = None) -> list[MsEntry]:
    pattern = validate_pattern(pattern)
    pos, lens, (hits, calls, cmps, skips) = index.kernel.ms(pattern, VARIANTS[variant])
    if stats is not None:
        stats.add(MsStats(len(pattern) - 1, hits, calls, cmps, skips))
    return _entries(pos, lens)


def ms_restart(index, c: int) -> tuple[int, MsEntry]:
    """Start a fresh match at byte ``c``: its first BWT copy, one step of LF."""
    q, pos, ln, *_ = index.kernel.step(c, 0, 0, 0, 0)
    return q, MsEntry(pos if ln else None, ln)


def extract_mems(ms: list[MsEntry], min_len: int = 25) -> list[tuple[int, int, int]]:
    """Left-maximal entries of length >= ``min_len`` as ``(i, pos, len)``."""
    out = []
    for i, e in enumerate(ms):
        if e.len >= min_len and (i == 0 or ms[i - 1].len != e.len + 1):
            out.append((i, e.pos, e.len))
    return out


# -- two-pass reference ----------------------------------------------------

def ms_two_pass(index, pattern: bytes, stats: Optional[MsStats] = None,
                trace: Optional[list] = None) -> list[MsEntry]:
    """Positions right to left with threshold decisions, then lengths left to
    right by random access, resuming each extension at the previous length - 1.

    ``trace`` collects ``(q, q_prev, q_next, pos_below, chose_prev)`` for every
    step that needed a threshold decision.
    """
    if index.thresholds is None:
        raise ValueError("index was built without thresholds")
    pattern = validate_pattern(pattern)
    rl = index.rlbwt
    thr = index.thresholds.positions
    heads, chars, lens_, crun, ptr = rl._heads, rl._chars, rl._lens, rl._crun, rl._ptr
    ccum, C = rl._ccum, rl.C.tolist()
    sa_start, sa_end = rl.sa_start.tolist(), rl.sa_end.tolist()
    m = len(pattern)
    pos = [-1] * m
    q = 0
    matched = False
    hits = 0
    for i in range(m - 1, -1, -1):
        c = pattern[i]
        lo, hi = ptr[c], ptr[c + 1]
        if lo == hi:
            matched = False
            continue
        if not matched:
            pos[i] = sa_start[crun[lo]] - 1
            q = C[c]
            matched = True
            continue
        k = bisect_right(heads, q) - 1
        if chars[k] == c:
            j = bisect_right(crun, k, lo, hi) - 1
            pos[i] = pos[i + 1] - 1
            q = C[c] + ccum[j] + q - heads[k]
            hits += 1
            continue
        j = bisect_right(crun, k, lo, hi)
        if j == lo:
            take_prev = False
        elif j == hi:
            take_prev = True
        else:
            take_prev = q < thr[j - 1]
            if trace is not None:
                r1, r2 = crun[j - 1], crun[j]
                trace.append((q, heads[r1] + lens_[r1] - 1, heads[r2], pos[i + 1], take_prev))
        if take_prev:
            r = crun[j - 1]
            pos[i] = sa_end[r] - 1
            q = C[c] + ccum[j - 1] + lens_[r] - 1
        else:
            r = crun[j]
            pos[i] = sa_start[r] - 1
            q = C[c] + ccum[j]

    access = index.slp._kernel.access
    out = []
    accesses = 0
    prev = 0
    for i in range(m):
        p = pos[i]
        if p < 0:
            out.append(MsEntry(None, 0))
            prev = 0
            continue
        k = max(prev - 1, 0)
        while i + k < m:
            accesses += 1
            if access(p + k) != pattern[i + k]:
                break
            k += 1
        out.append(MsEntry(p, k))
        prev = k
    if stats is not None:
        stats.add(MsStats(steps=m - 1, lf_hits=hits, accesses=accesses))
    return out


# -- streaming -------------------------------------------------------------

class StreamSession:
    """Left-to-right matching against an index of the reversed text.

    Each :meth:`push` emits the longest suffix of the bytes pushed so far
    that occurs in the original text. State is the BWT row plus the last
    entry (in reversed-text coordinates); nothing grows with the stream.
    """

    __slots__ = ("_index", "_variant", "q", "last")

    def __init__(self, index, variant: str = "std"):
        if not index.reversed:
            raise ValueError("streaming needs an index built with reversed=True")
        self._index = index
        self._variant = VARIANTS[variant]
        self.q = 0
        self.last = MsEntry(None, 0)

    def push(self, c: int) -> MsEntry:
        if c in (0, 1):
            raise ForbiddenByte(0, c)
        last = self.last
        q, p, ln, *_ = self._index.kernel.step(
            c, self.q, -1 if last.pos is None else last.pos, last.len, self._variant)
        self.q = q
        self.last = MsEntry(p if ln else None, ln)
        if not ln:
            return self.last
        # occurrence [p, p+ln) of the reversed text maps back to [n-1-p-ln, n-1-p)
        return MsEntry(self._index.n - 1 - p - ln, ln)

    def reset(self) -> None:
        self.q = 0
        self.last = MsEntry(None, 0)


def stream_open(index, variant: str = "std") -> StreamSession:
    return StreamSession(index, variant)


def stream_push(session: StreamSession, c: int) -> MsEntry:
    return session.push(c)
