"""Full suffix structures (build-time and test scaffolding) and brute-force oracles.

Nothing here is serialized into an index. The arrays feed the run-length
BWT, the threshold table and the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .types import MsEntry, Text


@dataclass(frozen=True)
class SuffixStructures:
    sa: np.ndarray
    isa: np.ndarray
    lcp: np.ndarray
    plcp: np.ndarray
    bwt: bytes


def suffix_array(data: bytes) -> np.ndarray:
    """Prefix-doubling suffix sort. ``data`` must end with a unique smallest byte."""
    n = len(data)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r1, r2 = rank[sa], second[sa]
        step = np.empty(n, dtype=np.int64)
        step[0] = 0
        step[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(step)
        rank = new
        if rank.max() == n - 1:
            return sa.astype(np.int64)
        k *= 2


def build(text: Text) -> SuffixStructures:
    data = text.data
    n = len(data)
    sa = suffix_array(data)
    isa = np.empty(n, dtype=np.int64)
    isa[sa] = np.arange(n, dtype=np.int64)
    lcp = np.asarray(_backend.core.kasai_lcp(data, sa, isa), dtype=np.int64)
    plcp = lcp[isa]
    arr = np.frombuffer(data, dtype=np.uint8)
    bwt = arr[(sa - 1) % n].tobytes()
    return SuffixStructures(sa=sa, isa=isa, lcp=lcp, plcp=plcp, bwt=bwt)


def count_runs(bwt: bytes) -> int:
    if not bwt:
        return 0
    a = np.frombuffer(bwt, dtype=np.uint8)
    return int(np.count_nonzero(a[1:] != a[:-1])) + 1


def invert_bwt(bwt: bytes) -> bytes:
    """Recover the text by LF-walking from row 0 (the sentinel suffix)."""
    n = len(bwt)
    a = np.frombuffer(bwt, dtype=np.uint8)
    order = np.argsort(a, kind="stable")
    # LF[order[k]] = k
    lf = np.empty(n, dtype=np.int64)
    lf[order] = np.arange(n)
    out = bytearray(n)
    q = 0
    out[n - 1] = 0
    for k in range(n - 2, -1, -1):
        out[k] = bwt[q]
        q = int(lf[q])
    return bytes(out)


# -- oracles -------------------------------------------------------------

def oracle_lce(text: Text, i: int, j: int) -> int:
    """Exact LCE by direct comparison of the raw bytes."""
    d = text.data
    n = len(d)
    if i == j:
        return n - i
    hi = n - max(i, j)
    lo = 0
    # galloping then bisection over slice equality
    step = 1
    while lo + step <= hi and d[i:i + lo + step] == d[j:j + lo + step]:
        lo += step
        step *= 2
    while step > 1:
        step //= 2
        if lo + step <= hi and d[i:i + lo + step] == d[j:j + lo + step]:
            lo += step
    return lo


def oracle_ms(text: Text, pattern: bytes) -> list[MsEntry]:
    d = text.data
    m = len(pattern)
    out: list[MsEntry] = []
    length = 0
    for i in range(m):
        length = max(length - 1, 0)
        while i + length < m and pattern[i:i + length + 1] in d:
            length += 1
        pos: Optional[int] = d.find(pattern[i:i + length]) if length else None
        out.append(MsEntry(pos, length))
    return out


def oracle_occurrences(text: Text, needle: bytes) -> set[int]:
    d = text.data
    found = set()
    k = d.find(needle)
    while k >= 0:
        found.add(k)
        k = d.find(needle, k + 1)
    return found


def oracle_suffix_match(text: Text, prefix: bytes) -> int:
    """Length of the longest suffix of ``prefix`` that occurs in the text."""
    d = text.data
    length = 0
    while length < len(prefix) and prefix[len(prefix) - length - 1:] in d:
        length += 1
    return length
