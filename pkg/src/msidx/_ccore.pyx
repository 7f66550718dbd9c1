# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same surface as ``_pycore``."""

import numpy as np

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint8_t

ctypedef int64_t i64

cdef enum:
    STD = 0
    NAIVE = 1
    HEUR = 2


def kasai_lcp(const uint8_t[::1] data, const i64[::1] sa, const i64[::1] isa):
    cdef Py_ssize_t n = data.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] lcp = out
    cdef Py_ssize_t p, q, r, h = 0
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
    return out


cdef struct LceResult:
    i64 length
    i64 cmps
    i64 skips


cdef class GrammarKernel:
    cdef const i64[::1] left
    cdef const i64[::1] right
    cdef const i64[::1] el
    cdef readonly i64 root
    cdef readonly i64 n
    cdef readonly i64 height

    def __init__(self, left, right, exp_len, root, height):
        self.left = np.ascontiguousarray(left, dtype=np.int64)
        self.right = np.ascontiguousarray(right, dtype=np.int64)
        self.el = np.ascontiguousarray(exp_len, dtype=np.int64)
        self.root = root
        self.n = self.el[root]
        self.height = height

    cdef i64 _descend(self, i64 i, i64* stack) noexcept nogil:
        cdef i64 top = 0
        cdef i64 x = self.root
        cdef i64 a
        while x >= 256:
            a = self.left[x]
            if i < self.el[a]:
                stack[top] = self.right[x]
                top += 1
                x = a
            else:
                i -= self.el[a]
                x = self.right[x]
        stack[top] = x
        return top + 1

    def access(self, i64 i):
        cdef i64 x = self.root
        cdef i64 a
        while x >= 256:
            a = self.left[x]
            if i < self.el[a]:
                x = a
            else:
                i -= self.el[a]
                x = self.right[x]
        return x

    def extract(self, i64 i, i64 length):
        if length <= 0:
            return b""
        out = bytearray(length)
        cdef unsigned char[::1] buf = out
        cdef i64* stack = <i64*> malloc((self.height + 2) * sizeof(i64))
        cdef i64 top, x, k = 0
        try:
            top = self._descend(i, stack)
            while k < length:
                top -= 1
                x = stack[top]
                while x >= 256:
                    stack[top] = self.right[x]
                    top += 1
                    x = self.left[x]
                buf[k] = <unsigned char> x
                k += 1
        finally:
            free(stack)
        return bytes(out)

    cdef LceResult c_lce(self, i64 i, i64 j, i64 limit, bint skip) noexcept nogil:
        cdef LceResult res
        res.length = 0
        res.cmps = 0
        res.skips = 0
        if i == j:
            res.length = self.n - i if self.n - i < limit else limit
            return res
        cdef i64* A = <i64*> malloc((self.height + 2) * sizeof(i64))
        cdef i64* B = <i64*> malloc((self.height + 2) * sizeof(i64))
        cdef i64 ta = self._descend(i, A)
        cdef i64 tb = self._descend(j, B)
        cdef i64 a, b, length = 0
        if skip:
            while ta > 0 and tb > 0 and length < limit:
                a = A[ta - 1]
                b = B[tb - 1]
                if a == b:
                    ta -= 1
                    tb -= 1
                    if a >= 256:
                        length += self.el[a]
                        res.skips += 1
                    else:
                        length += 1
                        res.cmps += 1
                elif a < 256 and b < 256:
                    res.cmps += 1
                    break
                elif self.el[a] >= self.el[b]:
                    A[ta - 1] = self.right[a]
                    A[ta] = self.left[a]
                    ta += 1
                else:
                    B[tb - 1] = self.right[b]
                    B[tb] = self.left[b]
                    tb += 1
        else:
            while ta > 0 and tb > 0 and length < limit:
                ta -= 1
                a = A[ta]
                while a >= 256:
                    A[ta] = self.right[a]
                    ta += 1
                    a = self.left[a]
                tb -= 1
                b = B[tb]
                while b >= 256:
                    B[tb] = self.right[b]
                    tb += 1
                    b = self.left[b]
                res.cmps += 1
                if a != b:
                    break
                length += 1
        free(A)
        free(B)
        res.length = length if length < limit else limit
        return res

    def lce(self, i64 i, i64 j, i64 limit, bint skip):
        cdef LceResult r = self.c_lce(i, j, limit, skip)
        return r.length, r.cmps, r.skips


cdef inline Py_ssize_t upper_bound(const i64[::1] arr, Py_ssize_t lo, Py_ssize_t hi, i64 key) noexcept nogil:
    # first index in [lo, hi) with arr[idx] > key
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] <= key:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef struct Step:
    i64 q
    i64 pos
    i64 ln
    i64 hit
    i64 calls
    i64 cmps
    i64 skips


cdef inline Step _pick(Step s, i64 lf, i64 p, i64 length, i64 calls, i64 cmps, i64 skips) noexcept nogil:
    s.q = lf
    s.pos = p - 1
    s.ln = length + 1
    s.calls = calls
    s.cmps = cmps
    s.skips = skips
    return s


cdef class MsKernel:
    cdef GrammarKernel g
    cdef const i64[::1] heads
    cdef const uint8_t[::1] chars
    cdef const i64[::1] lens
    cdef const i64[::1] sa_start
    cdef const i64[::1] sa_end
    cdef const i64[::1] C
    cdef const i64[::1] ptr
    cdef const i64[::1] crun
    cdef const i64[::1] ccum
    cdef Py_ssize_t r

    def __init__(self, GrammarKernel grammar, run_heads, run_chars, run_lens,
                 sa_start, sa_end, C, char_ptr, crun_run, crun_cum):
        self.g = grammar
        self.heads = np.ascontiguousarray(run_heads, dtype=np.int64)
        self.chars = np.ascontiguousarray(run_chars, dtype=np.uint8)
        self.lens = np.ascontiguousarray(run_lens, dtype=np.int64)
        self.sa_start = np.ascontiguousarray(sa_start, dtype=np.int64)
        self.sa_end = np.ascontiguousarray(sa_end, dtype=np.int64)
        self.C = np.ascontiguousarray(C, dtype=np.int64)
        self.ptr = np.ascontiguousarray(char_ptr, dtype=np.int64)
        self.crun = np.ascontiguousarray(crun_run, dtype=np.int64)
        self.ccum = np.ascontiguousarray(crun_cum, dtype=np.int64)
        self.r = self.heads.shape[0]

    cdef Step c_step(self, int c, i64 q, i64 pos, i64 ln, int variant) noexcept nogil:
        cdef Step s
        s.q = q
        s.pos = -1
        s.ln = 0
        s.hit = 0
        s.calls = 0
        s.cmps = 0
        s.skips = 0
        cdef Py_ssize_t lo = self.ptr[c]
        cdef Py_ssize_t hi = self.ptr[c + 1]
        if lo == hi:
            return s
        if ln == 0:
            s.q = self.C[c]
            s.pos = self.sa_start[self.crun[lo]] - 1
            s.ln = 1
            return s
        cdef Py_ssize_t k = upper_bound(self.heads, 0, self.r, q) - 1
        cdef Py_ssize_t j
        cdef int bc = self.chars[k]
        if bc == c:
            j = upper_bound(self.crun, self.ptr[bc], self.ptr[bc + 1], k) - 1
            s.q = self.C[bc] + self.ccum[j] + q - self.heads[k]
            s.pos = pos - 1
            s.ln = ln + 1
            s.hit = 1
            return s

        j = upper_bound(self.crun, lo, hi, k)
        cdef bint skip = variant != NAIVE
        cdef i64 q1 = -1, q2 = -1, lf1 = 0, lf2 = 0, p1 = 0, p2 = 0, r1, r2
        cdef LceResult e1, e2
        if j > lo:
            r1 = self.crun[j - 1]
            q1 = self.heads[r1] + self.lens[r1] - 1
            lf1 = self.C[c] + self.ccum[j - 1] + self.lens[r1] - 1
            p1 = self.sa_end[r1]
        if j < hi:
            r2 = self.crun[j]
            q2 = self.heads[r2]
            lf2 = self.C[c] + self.ccum[j]
            p2 = self.sa_start[r2]

        if q2 < 0:
            e1 = self.g.c_lce(p1, pos, ln, skip)
            return _pick(s, lf1, p1, e1.length, 1, e1.cmps, e1.skips)
        if q1 < 0:
            e2 = self.g.c_lce(p2, pos, ln, skip)
            return _pick(s, lf2, p2, e2.length, 1, e2.cmps, e2.skips)

        if variant == HEUR:
            if q - q1 <= q2 - q:
                e1 = self.g.c_lce(p1, pos, ln, True)
                if e1.length >= ln:
                    return _pick(s, lf1, p1, e1.length, 1, e1.cmps, e1.skips)
                e2 = self.g.c_lce(p2, pos, ln, True)
            else:
                e2 = self.g.c_lce(p2, pos, ln, True)
                if e2.length >= ln:
                    return _pick(s, lf2, p2, e2.length, 1, e2.cmps, e2.skips)
                e1 = self.g.c_lce(p1, pos, ln, True)
        else:
            e1 = self.g.c_lce(p1, pos, ln, skip)
            e2 = self.g.c_lce(p2, pos, ln, skip)
        if e1.length >= e2.length:
            return _pick(s, lf1, p1, e1.length, 2, e1.cmps + e2.cmps, e1.skips + e2.skips)
        return _pick(s, lf2, p2, e2.length, 2, e1.cmps + e2.cmps, e1.skips + e2.skips)

    def step(self, int c, i64 q, i64 pos, i64 ln, int variant):
        cdef Step s = self.c_step(c, q, pos, ln, variant)
        return s.q, s.pos, s.ln, s.hit, s.calls, s.cmps, s.skips

    def ms(self, const uint8_t[::1] pattern, int variant):
        cdef Py_ssize_t m = pattern.shape[0]
        pos_arr = np.empty(m, dtype=np.int64)
        len_arr = np.empty(m, dtype=np.int64)
        cdef i64[::1] pv = pos_arr
        cdef i64[::1] lv = len_arr
        cdef i64 q = 0, p = 0, ln = 0
        cdef i64 hits = 0, calls = 0, cmps = 0, skips = 0
        cdef Py_ssize_t i
        cdef Step s
        with nogil:
            for i in range(m - 1, -1, -1):
                s = self.c_step(pattern[i], q, p, ln, variant)
                q = s.q
                p = s.pos
                ln = s.ln
                pv[i] = p
                lv[i] = ln
                hits += s.hit
                calls += s.calls
                cmps += s.cmps
                skips += s.skips
        return pos_arr.tolist(), len_arr.tolist(), (hits, calls, cmps, skips)
