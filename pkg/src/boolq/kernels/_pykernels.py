"""Pure-Python implementations of the brute-force kernels.

Same signatures and results as the compiled ``_ckernels`` module. Arrays go
in and out as numpy arrays so the two backends are interchangeable; inside,
everything runs on plain lists.
"""

import numpy as np


def _popcount(v):
    return bin(v).count("1")


def mobius(values, n):
    """Subset Moebius transform: c[S] = sum over T subset S of (-1)^|S-T| values[T]."""
    c = [int(v) for v in values]
    size = 1 << n
    for i in range(n):
        bit = 1 << i
        for s in range(size):
            if s & bit:
                c[s] -= c[s ^ bit]
    return np.array(c, dtype=np.int64)


def _packing(bits, n, x, best, minimal, down):
    size = 1 << n
    v = bits[x]
    down[0] = 0
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


def packing_table(bits, n, x):
    """DP tables for one point: (best packing per mask, minimal-sensitive flags)."""
    size = 1 << n
    b = [int(v) for v in bits]
    best = [0] * size
    minimal = [0] * size
    down = [0] * size
    _packing(b, n, int(x), best, minimal, down)
    return np.array(best, dtype=np.int32), np.array(minimal, dtype=np.uint8)


def bs_profile(bits, n):
    """bs_x(f) for every point x."""
    size = 1 << n
    b = [int(v) for v in bits]
    best = [0] * size
    minimal = [0] * size
    down = [0] * size
    out = [_packing(b, n, x, best, minimal, down) for x in range(size)]
    return np.array(out, dtype=np.int32)


def dt_depth(bits, n):
    """Exact decision-tree depth by dynamic programming over all 3^n subcubes.

    Subcube index digits (base 3, digit i for variable i): 0 or 1 fixes the
    variable, 2 leaves it free.
    """
    b = [int(v) for v in bits]
    total = 3 ** n
    pw = [3 ** i for i in range(n)]
    seen = bytearray(total)
    depth = bytearray(total)
    for c in range(total):
        t = c
        point = 0
        free = []
        for i in range(n):
            d = t % 3
            t //= 3
            if d == 2:
                free.append(pw[i])
            elif d == 1:
                point |= 1 << i
        if not free:
            seen[c] = 1 << b[point]
            continue
        p0 = free[0]
        s = seen[c - 2 * p0] | seen[c - p0]
        seen[c] = s
        if s != 3:
            continue
        best = 255
        for p in free:
            d0 = depth[c - 2 * p]
            d1 = depth[c - p]
            cand = 1 + (d0 if d0 > d1 else d1)
            if cand < best:
                best = cand
        depth[c] = best
    return depth[total - 1]


def _restrict_dense(work, n, j, val):
    bit = 1 << j
    for s in range(1 << n):
        if s & bit and work[s]:
            if val:
                work[s ^ bit] += work[s]
            work[s] = 0


def alg_a_profile(coeffs, n):
    """Run the maxonomial evaluator on every input X of a dense polynomial.

    Returns (value, rounds, queries) arrays indexed by X. The maxonomial in
    each round is the smallest mask among the highest-degree terms.
    """
    size = 1 << n
    base = [int(v) for v in coeffs]
    pc = [_popcount(s) for s in range(size)]
    value = [0] * size
    rounds = [0] * size
    queries = [0] * size
    for x in range(size):
        work = list(base)
        r = q = 0
        while True:
            deg = 0
            mono = 0
            for s in range(size):
                if work[s] and pc[s] > deg:
                    deg = pc[s]
                    mono = s
            if deg == 0:
                value[x] = work[0]
                break
            m = mono
            while m:
                low = m & -m
                j = low.bit_length() - 1
                _restrict_dense(work, n, j, (x >> j) & 1)
                m ^= low
            r += 1
            q += deg
        rounds[x] = r
        queries[x] = q
    return (np.array(value, dtype=np.int64), np.array(rounds, dtype=np.int32),
            np.array(queries, dtype=np.int32))


def lemma1_scan(bits, coeffs, n):
    """Check the maxonomial flip lemma at every point and every maxonomial.

    Returns (checks, fail_point, fail_mask); the failure fields are -1 when
    every search succeeded.
    """
    size = 1 << n
    b = [int(v) for v in bits]
    c = [int(v) for v in coeffs]
    deg = 0
    for s in range(size):
        if c[s] and _popcount(s) > deg:
            deg = _popcount(s)
    if deg == 0:
        return 0, -1, -1
    maxos = [s for s in range(size) if c[s] and _popcount(s) == deg]
    checks = 0
    for w in range(size):
        v = b[w]
        for m in maxos:
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
