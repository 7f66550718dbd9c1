"""Straight-line program over the text: prefix-free parsing + RePair, with
random access and longest-common-extension queries.

Symbol ids 0..255 are terminal bytes; pair rules are numbered from 256 in
topological order (children before parents).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from . import _backend
from .types import Text

PAD = 0x02
MERSENNE61 = (1 << 61) - 1
HASH_BASE = 256
DEFAULT_W, DEFAULT_P = 10, 100


class OutOfBounds(IndexError):
    pass


# -- prefix-free parsing -------------------------------------------------

@dataclass(frozen=True)
class PfpOutput:
    window_w: int
    modulus_p: int
    dictionary: list[bytes]
    parse: list[int]

    def reconstruct(self) -> bytes:
        """Padded text rebuilt from the parse (overlaps removed)."""
        w = self.window_w
        phrases = [self.dictionary[k] for k in self.parse]
        return phrases[0] + b"".join(ph[w:] for ph in phrases[1:])


def pfp_parse(text: Text, w: int = DEFAULT_W, p: int = DEFAULT_P) -> PfpOutput:
    """Split ``PAD^w + text + PAD^w`` at windows whose Karp-Rabin fingerprint
    is 0 mod ``p``. Consecutive phrases overlap by exactly ``w`` bytes.

    Only windows ending strictly before the sentinel may trigger, so the
    last phrase always carries the sentinel and the whole end padding.
    """
    if w < 2 or p < 2:
        raise ValueError("need w >= 2 and p >= 2")
    s = bytes([PAD]) * w + text.data + bytes([PAD]) * w
    size = len(s)
    top = pow(HASH_BASE, w, MERSENNE61)
    h = 0
    for b in s[:w]:
        h = (h * HASH_BASE + b) % MERSENNE61
    cuts = []
    last_trigger = size - w - 2
    for k in range(w, last_trigger + 1):
        h = (h * HASH_BASE + s[k] - s[k - w] * top) % MERSENNE61
        if h % p == 0:
            cuts.append(k)
    phrases = []
    start = 0
    for k in cuts:
        phrases.append(s[start:k + 1])
        start = k - w + 1
    phrases.append(s[start:])
    dictionary = sorted(set(phrases))
    ids = {ph: k for k, ph in enumerate(dictionary)}
    return PfpOutput(w, p, dictionary, [ids[ph] for ph in phrases])


# -- RePair --------------------------------------------------------------

def repair(seq: Sequence[Hashable], next_id: int):
    """Pair-replacement compression of ``seq``.

    Repeatedly replaces the most frequent adjacent pair (ties: smallest pair)
    occurring at least twice without overlap by a fresh symbol numbered from
    ``next_id``. Returns ``(rules, final_sequence, next_id)`` where ``rules``
    maps each new symbol to its pair, in creation order.
    """
    n = len(seq)
    sym = list(seq)
    nxt = list(range(1, n)) + [-1]
    prv = list(range(-1, n - 1))
    alive = [True] * n
    occ: dict = {}
    heap: list = []

    def add(pair, i):
        s = occ.get(pair)
        if s is None:
            s = occ[pair] = set()
        s.add(i)
        if len(s) >= 2:
            heapq.heappush(heap, (-len(s), pair))

    def remove(pair, i):
        s = occ.get(pair)
        if s is not None and i in s:
            s.discard(i)
            if len(s) >= 2:
                heapq.heappush(heap, (-len(s), pair))

    for i in range(n - 1):
        add((sym[i], sym[i + 1]), i)

    rules: dict = {}
    while heap:
        negc, pair = heapq.heappop(heap)
        s = occ.get(pair)
        if s is None or len(s) != -negc:
            continue
        a, b = pair
        positions = sorted(s)
        # drop overlapping occurrences inside runs of a == b
        chosen = []
        last = -2
        for i in positions:
            if a == b and last >= 0 and nxt[last] == i:
                continue
            chosen.append(i)
            last = i
        if len(chosen) < 2:
            continue
        x = next_id
        next_id += 1
        rules[x] = pair
        del occ[pair]
        for i in chosen:
            if not alive[i] or sym[i] != a:
                continue
            j = nxt[i]
            if j < 0 or sym[j] != b:
                continue
            h = prv[i]
            k = nxt[j]
            if h >= 0:
                remove((sym[h], a), h)
            if k >= 0:
                remove((b, sym[k]), j)
            sym[i] = x
            alive[j] = False
            nxt[i] = k
            if k >= 0:
                prv[k] = i
            if h >= 0:
                add((sym[h], x), h)
            if k >= 0:
                add((x, sym[k]), i)
    out = []
    i = 0 if n else -1
    while i >= 0:
        out.append(sym[i])
        i = nxt[i]
    return rules, out, next_id


def _chain(symbols: list, rules: dict, next_id: int):
    """Fold a symbol list left to right into a single symbol."""
    acc = symbols[0]
    for s in symbols[1:]:
        rules[next_id] = (acc, s)
        acc = next_id
        next_id += 1
    return acc, next_id


def repair_compress(seq: Sequence[int]) -> Slp:
    """RePair over a byte sequence followed by left-to-right chaining of what
    remains. Exposed mainly for testing the compressor in isolation."""
    if not seq:
        raise ValueError("empty sequence")
    rules, rest, nid = repair(list(seq), 256)
    replaced = len(rules)
    root, _ = _chain(rest, rules, nid)
    return Slp.from_rules(rules, root, replaced)


# -- the SLP -------------------------------------------------------------

class Slp:
    """Binary grammar with expansion lengths stored per symbol."""

    def __init__(self, left, right, root: int, replaced: int = 0):
        self.left = np.ascontiguousarray(left, dtype=np.int64)
        self.right = np.ascontiguousarray(right, dtype=np.int64)
        self.root = int(root)
        self.replaced = replaced
        size = len(self.left)
        exp_len = np.ones(size, dtype=np.int64)
        height = np.zeros(size, dtype=np.int64)
        lft, rgt = self.left.tolist(), self.right.tolist()
        el, ht = exp_len.tolist(), height.tolist()
        for x in range(256, size):
            a, b = lft[x], rgt[x]
            if not (0 <= a < x and 0 <= b < x):
                raise ValueError(f"rule {x} is not topologically ordered")
            el[x] = el[a] + el[b]
            ht[x] = max(ht[a], ht[b]) + 1
        self.exp_len = np.array(el, dtype=np.int64)
        self.height = ht[self.root]
        self.n = el[self.root]
        self._kernel = self.make_kernel()

    def make_kernel(self, core=None):
        """Grammar kernel from ``core`` (default: the selected backend)."""
        core = core or _backend.core
        return core.GrammarKernel(self.left, self.right, self.exp_len, self.root, self.height)

    @classmethod
    def from_rules(cls, rules: dict, root, replaced: int = 0) -> Slp:
        """Renumber an arbitrary rule dict (terminals are ints < 256) into
        topological order, keeping only rules reachable from ``root``."""
        order: list = []
        seen: set = set()
        stack = [(root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                order.append(x)
                continue
            if x in seen or not (x in rules):
                continue
            seen.add(x)
            stack.append((x, True))
            a, b = rules[x]
            stack.append((b, False))
            stack.append((a, False))
        ids = {x: 256 + k for k, x in enumerate(order)}
        size = 256 + len(order)
        left = np.full(size, -1, dtype=np.int64)
        right = np.full(size, -1, dtype=np.int64)
        for x in order:
            a, b = rules[x]
            left[ids[x]] = ids.get(a, a)
            right[ids[x]] = ids.get(b, b)
        return cls(left, right, ids.get(root, root), replaced)

    @property
    def rule_count(self) -> int:
        """Number of pair rules."""
        return len(self.left) - 256

    def expand(self) -> bytes:
        return self.extract(0, self.n)

    def access(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise OutOfBounds(i)
        return self._kernel.access(i)

    def extract(self, i: int, length: int) -> bytes:
        if i < 0 or length < 0 or i + length > self.n:
            raise OutOfBounds((i, length))
        return self._kernel.extract(i, length)

    def lce(self, i: int, j: int) -> int:
        self._check_pair(i, j)
        return self._kernel.lce(i, j, self.n, True)[0]

    def lce_naive(self, i: int, j: int) -> int:
        self._check_pair(i, j)
        return self._kernel.lce(i, j, self.n, False)[0]

    def lce_counted(self, i: int, j: int, skip: bool = True, limit: int | None = None):
        """``(length, char_compares, subtree_skips)`` for one query."""
        self._check_pair(i, j)
        return self._kernel.lce(i, j, self.n if limit is None else limit, skip)

    def _check_pair(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise OutOfBounds((i, j))


def build_slp(text: Text, w: int = DEFAULT_W, p: int = DEFAULT_P) -> Slp:
    """Two-level construction: RePair over the (overlap-trimmed) dictionary
    phrases separated by unique markers, then RePair over the parse, with
    parse terminals substituted by the phrase symbols."""
    pfp = pfp_parse(text, w, p)
    last = pfp.parse[-1]
    trimmed = []
    for k, ph in enumerate(pfp.dictionary):
        body = ph[w:]
        if k == last:
            body = body[:-w]
        trimmed.append(body)

    seq: list = []
    for k, body in enumerate(trimmed):
        seq.extend(body)
        seq.append(-1 - k)  # unique separator
    rules, rest, nid = repair(seq, 256)
    replaced = len(rules)
    phrase_sym = []
    segment: list = []
    for s in rest:
        if isinstance(s, int) and s < 0:
            sym, nid = _chain(segment, rules, nid)
            phrase_sym.append(sym)
            segment = []
        else:
            segment.append(s)

    d = len(trimmed)
    prules, prest, _ = repair(pfp.parse, d)
    replaced += len(prules)
    mapping = {}
    for x, (a, b) in prules.items():
        mapping[x] = nid
        rules[nid] = (
            phrase_sym[a] if a < d else mapping[a],
            phrase_sym[b] if b < d else mapping[b],
        )
        nid += 1
    top = [phrase_sym[s] if s < d else mapping[s] for s in prest]
    root, nid = _chain(top, rules, nid)
    return Slp.from_rules(rules, root, replaced)
