# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force kernels. Mirrors ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint8_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cnp.import_array()

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil


def mobius(values, int n):
    cdef cnp.ndarray[int64_t, ndim=1] out = np.array(values, dtype=np.int64)
    cdef int64_t[::1] c = out
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t s, bit
    cdef int i
    for i in range(n):
        bit = (<Py_ssize_t>1) << i
        for s in range(size):
            if s & bit:
                c[s] -= c[s ^ bit]
    return out


cdef int _packing(const uint8_t[::1] bits, int n, Py_ssize_t x,
                  int32_t* best, uint8_t* minimal, uint8_t* down) noexcept nogil:
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef uint8_t v = bits[x]
    cdef Py_ssize_t b, r, low, s, rest, t, blk
    cdef uint8_t sens, anysub
    cdef int32_t top, cand
    down[0] = 0
    minimal[0] = 0
    for b in range(1, size):
        sens = 1 if bits[x ^ b] != v else 0
        anysub = 0
        r = b
        while r:
            low = r & -r
            if down[b ^ low]:
                anysub = 1
                break
            r ^= low
        down[b] = sens | anysub
        minimal[b] = 1 if (sens and not anysub) else 0
    best[0] = 0
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        top = best[rest]
        t = rest
        while True:
            blk = t | low
            if minimal[blk]:
                cand = 1 + best[s ^ blk]
                if cand > top:
                    top = cand
            if t == 0:
                break
            t = (t - 1) & rest
        best[s] = top
    return best[size - 1]


def packing_table(bits, int n, Py_ssize_t x):
    cdef const uint8_t[::1] b = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    best = np.zeros(size, dtype=np.int32)
    minimal = np.zeros(size, dtype=np.uint8)
    cdef int32_t[::1] bv = best
    cdef uint8_t[::1] mv = minimal
    cdef uint8_t* down = <uint8_t*>malloc(size)
    if down == NULL:
        raise MemoryError()
    try:
        _packing(b, n, x, &bv[0], &mv[0], down)
    finally:
        free(down)
    return best, minimal


def bs_profile(bits, int n):
    cdef const uint8_t[::1] b = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = np.zeros(size, dtype=np.int32)
    cdef int32_t[::1] ov = out
    cdef int32_t* best = <int32_t*>malloc(size * sizeof(int32_t))
    cdef uint8_t* minimal = <uint8_t*>malloc(size)
    cdef uint8_t* down = <uint8_t*>malloc(size)
    cdef Py_ssize_t x
    if best == NULL or minimal == NULL or down == NULL:
        free(best); free(minimal); free(down)
        raise MemoryError()
    with nogil:
        for x in range(size):
            ov[x] = _packing(b, n, x, best, minimal, down)
    free(best); free(minimal); free(down)
    return out


def dt_depth(bits, int n):
    cdef const uint8_t[::1] b = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t total = 1
    cdef int i
    for i in range(n):
        total *= 3
    cdef uint8_t* seen = <uint8_t*>malloc(total)
    cdef uint8_t* depth = <uint8_t*>malloc(total)
    cdef Py_ssize_t pw[32]
    cdef Py_ssize_t freep[32]
    cdef Py_ssize_t c, t, point, p, p0
    cdef int d, nfree, k
    cdef uint8_t s, d0, d1, cand, best
    if seen == NULL or depth == NULL:
        free(seen); free(depth)
        raise MemoryError()
    pw[0] = 1
    for i in range(1, n):
        pw[i] = pw[i - 1] * 3
    with nogil:
        for c in range(total):
            t = c
            point = 0
            nfree = 0
            for i in range(n):
                d = t % 3
                t = t // 3
                if d == 2:
                    freep[nfree] = pw[i]
                    nfree += 1
                elif d == 1:
                    point |= (<Py_ssize_t>1) << i
            depth[c] = 0
            if nfree == 0:
                seen[c] = 1 << b[point]
                continue
            p0 = freep[0]
            s = seen[c - 2 * p0] | seen[c - p0]
            seen[c] = s
            if s != 3:
                continue
            best = 255
            for k in range(nfree):
                p = freep[k]
                d0 = depth[c - 2 * p]
                d1 = depth[c - p]
                cand = 1 + (d0 if d0 > d1 else d1)
                if cand < best:
                    best = cand
            depth[c] = best
    result = depth[total - 1]
    free(seen)
    free(depth)
    return result


cdef inline void _restrict_dense(int64_t* work, Py_ssize_t size, int j, int val) noexcept nogil:
    cdef Py_ssize_t bit = (<Py_ssize_t>1) << j
    cdef Py_ssize_t s
    for s in range(size):
        if (s & bit) and work[s] != 0:
            if val:
                work[s ^ bit] += work[s]
            work[s] = 0


def alg_a_profile(coeffs, int n):
    cdef const int64_t[::1] base = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    value = np.zeros(size, dtype=np.int64)
    rounds = np.zeros(size, dtype=np.int32)
    queries = np.zeros(size, dtype=np.int32)
    cdef int64_t[::1] vv = value
    cdef int32_t[::1] rv = rounds
    cdef int32_t[::1] qv = queries
    cdef int64_t* work = <int64_t*>malloc(size * sizeof(int64_t))
    cdef Py_ssize_t x, s, mono, m, low
    cdef int deg, pc, r, q, j
    if work == NULL:
        raise MemoryError()
    with nogil:
        for x in range(size):
            memcpy(work, &base[0], size * sizeof(int64_t))
            r = 0
            q = 0
            while True:
                deg = 0
                mono = 0
                for s in range(size):
                    if work[s] != 0:
                        pc = __builtin_popcount(<unsigned int>s)
                        if pc > deg:
                            deg = pc
                            mono = s
                if deg == 0:
                    vv[x] = work[0]
                    break
                m = mono
                while m:
                    low = m & -m
                    j = __builtin_ctz(<unsigned int>low)
                    _restrict_dense(work, size, j, (x >> j) & 1)
                    m ^= low
                r += 1
                q += deg
            rv[x] = r
            qv[x] = q
    free(work)
    return value, rounds, queries


def lemma1_scan(bits, coeffs, int n):
    cdef const uint8_t[::1] b = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef const int64_t[::1] c = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t s, w, m, sub
    cdef int deg = 0, pc, k, nmax = 0
    cdef long long checks = 0
    cdef uint8_t v
    cdef bint found
    for s in range(size):
        if c[s] != 0:
            pc = __builtin_popcount(<unsigned int>s)
            if pc > deg:
                deg = pc
    if deg == 0:
        return 0, -1, -1
    maxos = np.array([s for s in range(size)
                      if c[s] != 0 and __builtin_popcount(<unsigned int>s) == deg],
                     dtype=np.int64)
    cdef const int64_t[::1] mv = maxos
    nmax = mv.shape[0]
    for w in range(size):
        v = b[w]
        for k in range(nmax):
            m = mv[k]
            checks += 1
            sub = m
            found = False
            while sub:
                if b[w ^ sub] != v:
                    found = True
                    break
                sub = (sub - 1) & m
            if not found:
                return checks, w, m
    return checks, -1, -1
