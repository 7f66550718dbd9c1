"""Pure-Python kernels. Mirrors ``_ccore.pyx`` function for function; used
when the compiled extension is unavailable or MSIDX_BACKEND=python."""

from bisect import bisect_right

STD, NAIVE, HEUR = 0, 1, 2


def kasai_lcp(data, sa, isa):
    n = len(data)
    sa = list(sa)
    isa = list(isa)
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = isa[p]
        if r == 0:
            h = 0
            continue
        q = sa[r - 1]
        while p + h < n and q + h < n and data[p + h] == data[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


class GrammarKernel:
    def __init__(self, left, right, exp_len, root, height):
        self.left = list(left)
        self.right = list(right)
        self.exp_len = list(exp_len)
        self.root = int(root)
        self.n = self.exp_len[self.root]

    def _descend(self, i):
        # stack of pending subtrees covering T[i..]; top is next
        left, right, el = self.left, self.right, self.exp_len
        stack = []
        x = self.root
        while x >= 256:
            a = left[x]
            if i < el[a]:
                stack.append(right[x])
                x = a
            else:
                i -= el[a]
                x = right[x]
        stack.append(x)
        return stack

    def access(self, i):
        left, right, el = self.left, self.right, self.exp_len
        x = self.root
        while x >= 256:
            a = left[x]
            if i < el[a]:
                x = a
            else:
                i -= el[a]
                x = right[x]
        return x

    def extract(self, i, length):
        out = bytearray()
        if length <= 0:
            return bytes(out)
        left, right = self.left, self.right
        stack = self._descend(i)
        while len(out) < length:
            x = stack.pop()
            while x >= 256:
                stack.append(right[x])
                x = left[x]
            out.append(x)
        return bytes(out)

    def lce(self, i, j, limit, skip):
        """Returns (min(LCE, limit), char_compares, skipped_subtrees)."""
        if i == j:
            return min(self.n - i, limit), 0, 0
        left, right, el = self.left, self.right, self.exp_len
        A = self._descend(i)
        B = self._descend(j)
        length = cmps = skips = 0
        if skip:
            while A and B and length < limit:
                a = A[-1]
                b = B[-1]
                if a == b:
                    A.pop()
                    B.pop()
                    if a >= 256:
                        length += el[a]
                        skips += 1
                    else:
                        length += 1
                        cmps += 1
                elif a < 256 and b < 256:
                    cmps += 1
                    break
                elif el[a] >= el[b]:
                    A.pop()
                    A.append(right[a])
                    A.append(left[a])
                else:
                    B.pop()
                    B.append(right[b])
                    B.append(left[b])
        else:
            while A and B and length < limit:
                a = A.pop()
                while a >= 256:
                    A.append(right[a])
                    a = left[a]
                b = B.pop()
                while b >= 256:
                    B.append(right[b])
                    b = left[b]
                cmps += 1
                if a != b:
                    break
                length += 1
        return (length if length < limit else limit), cmps, skips


class MsKernel:
    def __init__(self, grammar, run_heads, run_chars, run_lens, sa_start, sa_end,
                 C, char_ptr, crun_run, crun_cum):
        self.g = grammar
        self.heads = list(run_heads)
        self.chars = list(run_chars)
        self.lens = list(run_lens)
        self.sa_start = list(sa_start)
        self.sa_end = list(sa_end)
        self.C = list(C)
        self.ptr = list(char_ptr)
        self.crun = list(crun_run)
        self.ccum = list(crun_cum)

    def _lf(self, q, k):
        # k is the run holding row q
        c = self.chars[k]
        lo = self.ptr[c]
        j = bisect_right(self.crun, k, lo, self.ptr[c + 1]) - 1
        return self.C[c] + self.ccum[j] + q - self.heads[k]

    def step(self, c, q, pos, ln, variant):
        """One right-to-left step. Returns
        (q, pos, len, lf_hit, lce_calls, char_compares, skips);
        pos == -1 and len == 0 when ``c`` is absent from the text."""
        lo, hi = self.ptr[c], self.ptr[c + 1]
        if lo == hi:
            return q, -1, 0, 0, 0, 0, 0
        if ln == 0:
            run = self.crun[lo]
            return self.C[c], self.sa_start[run] - 1, 1, 0, 0, 0, 0
        k = bisect_right(self.heads, q) - 1
        if self.chars[k] == c:
            return self._lf(q, k), pos - 1, ln + 1, 1, 0, 0, 0

        j = bisect_right(self.crun, k, lo, hi)
        skip = variant != NAIVE
        lce = self.g.lce
        calls = cmps = skips = 0
        if j > lo:
            r1 = self.crun[j - 1]
            q1 = self.heads[r1] + self.lens[r1] - 1
            lf1 = self.C[c] + self.ccum[j - 1] + self.lens[r1] - 1
            p1 = self.sa_end[r1]
        else:
            q1 = -1
        if j < hi:
            r2 = self.crun[j]
            q2 = self.heads[r2]
            lf2 = self.C[c] + self.ccum[j]
            p2 = self.sa_start[r2]
        else:
            q2 = -1

        if q2 < 0:
            l1, a, b = lce(p1, pos, ln, skip)
            return lf1, p1 - 1, l1 + 1, 0, 1, a, b
        if q1 < 0:
            l2, a, b = lce(p2, pos, ln, skip)
            return lf2, p2 - 1, l2 + 1, 0, 1, a, b

        if variant == HEUR:
            if q - q1 <= q2 - q:
                l1, a, b = lce(p1, pos, ln, True)
                if l1 >= ln:
                    return lf1, p1 - 1, l1 + 1, 0, 1, a, b
                l2, a2, b2 = lce(p2, pos, ln, True)
            else:
                l2, a2, b2 = lce(p2, pos, ln, True)
                if l2 >= ln:
                    return lf2, p2 - 1, l2 + 1, 0, 1, a2, b2
                l1, a, b = lce(p1, pos, ln, True)
        else:
            l1, a, b = lce(p1, pos, ln, skip)
            l2, a2, b2 = lce(p2, pos, ln, skip)
        calls, cmps, skips = 2, a + a2, b + b2
        if l1 >= l2:
            return lf1, p1 - 1, l1 + 1, 0, calls, cmps, skips
        return lf2, p2 - 1, l2 + 1, 0, calls, cmps, skips

    def ms(self, pattern, variant):
        """Matching statistics of ``pattern``, right to left.

        Returns (pos, len, (lf_hits, lce_calls, char_compares, skips));
        pos is -1 where len is 0."""
        m = len(pattern)
        pos = [-1] * m
        lens = [0] * m
        q = p = ln = 0
        hits = calls = cmps = skips = 0
        step = self.step
        for i in range(m - 1, -1, -1):
            q, p, ln, h, a, b, s = step(pattern[i], q, p, ln, variant)
            pos[i] = p
            lens[i] = ln
            hits += h
            calls += a
            cmps += b
            skips += s
        return pos, lens, (hits, calls, cmps, skips)
