"""phi / phi^-1 / PLCP from run-boundary samples, and occurrence listing."""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterator, Optional, Sequence

import numpy as np

from .grammar import Slp
from .rlbwt import RlBwt
from .types import MsEntry

NONE = -1


class LocateSamples:
    """Text positions sampled at run heads (for phi) and run tails (for
    phi^-1), each with the SA value of its lexicographic neighbour.

    phi is piecewise linear between consecutive ``pred_points``; text
    position 0 is always sampled because the sentinel forms its own run.
    """

    def __init__(self, pred_points, pred_targets, succ_points, succ_targets):
        self.pred_points = np.ascontiguousarray(pred_points, dtype=np.int64)
        self.pred_targets = np.ascontiguousarray(pred_targets, dtype=np.int64)
        self.succ_points = np.ascontiguousarray(succ_points, dtype=np.int64)
        self.succ_targets = np.ascontiguousarray(succ_targets, dtype=np.int64)
        self._pp = self.pred_points.tolist()
        self._pt = self.pred_targets.tolist()
        self._sp = self.succ_points.tolist()
        self._st = self.succ_targets.tolist()

    @classmethod
    def from_rlbwt(cls, rl: RlBwt) -> LocateSamples:
        start, end = rl.sa_start, rl.sa_end
        # neighbour above a run head is the tail of the previous run
        above = np.r_[NONE, end[:-1]]
        below = np.r_[start[1:], NONE]
        o1 = np.argsort(start)
        o2 = np.argsort(end)
        return cls(start[o1], above[o1], end[o2], below[o2])

    def phi(self, p: int) -> Optional[int]:
        k = bisect_right(self._pp, p) - 1
        t = self._pt[k]
        return None if t == NONE else t + (p - self._pp[k])

    def phi_inv(self, p: int) -> Optional[int]:
        k = bisect_right(self._sp, p) - 1
        t = self._st[k]
        return None if t == NONE else t + (p - self._sp[k])


class Locator:
    def __init__(self, samples: LocateSamples, slp: Slp):
        self.samples = samples
        self.slp = slp

    def phi(self, p: int) -> Optional[int]:
        return self.samples.phi(p)

    def phi_inv(self, p: int) -> Optional[int]:
        return self.samples.phi_inv(p)

    def plcp(self, p: int) -> int:
        q = self.samples.phi(p)
        return 0 if q is None else self.slp.lce(p, q)

    def locate(self, ms: Sequence[MsEntry], i: int, j: int) -> Iterator[int]:
        """Every text position where ``P[i..j]`` occurs, starting from the
        witness ``ms[i].pos`` and walking the lexicographic neighbours."""
        need = j - i + 1
        if ms[i].len < need:
            return
        start = ms[i].pos
        p = start
        yield p
        while self.plcp(p) >= need:
            p = self.phi(p)
            yield p
        p = self.phi_inv(start)
        while p is not None and self.plcp(p) >= need:
            yield p
            p = self.phi_inv(p)
