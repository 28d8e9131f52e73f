"""Numba-jitted hot kernels: edge generation, avoider scans, union-find.

All kernels iterate S_n in lexicographic rank order, maintaining the
current permutation with next_permutation instead of unranking every
rank.  Factor-mode edge targets are computed with an O(c) Lehmer-delta
update (only the window's digits change when a factor is rewritten);
subword mode falls back to a full O(n^2) rank per neighbor.

Edge-generation kernels are nogil so blocks of the rank space can run on
a thread pool.  The resulting decomposition is independent of block
split and union order: class ids are assigned afterwards by minimal
member rank.
"""

from __future__ import annotations

import numpy as np

try:
    import numba as nb

    HAVE_NUMBA = True
    _jit = nb.njit(cache=True, nogil=True)
except ImportError:  # pragma: no cover - exercised via the numpy backend
    HAVE_NUMBA = False

    def _jit(f):
        return f


@_jit
def _unrank_into(r, n, fact, out):
    avail = np.empty(n, np.int64)
    for i in range(n):
        avail[i] = i + 1
    rem = r
    for i in range(n):
        f = fact[n - 1 - i]
        d = rem // f
        rem = rem % f
        out[i] = avail[d]
        for k in range(d, n - i - 1):
            avail[k] = avail[k + 1]


@_jit
def _next_perm(p):
    n = p.shape[0]
    i = n - 2
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    p[i], p[j] = p[j], p[i]
    lo, hi = i + 1, n - 1
    while lo < hi:
        p[lo], p[hi] = p[hi], p[lo]
        lo += 1
        hi -= 1
    return True


@_jit
def factor_edges_block(
    n, c, start, count, fact, cfact,
    part_id, pat_onel, pat_digits, partners_ptr, partners_idx,
    src, dst,
):
    p = np.empty(n, np.int64)
    _unrank_into(start, n, fact, p)
    sw = np.empty(c, np.int64)
    tail = np.empty(c, np.int64)
    m = 0
    r = start
    for _ in range(count):
        for i in range(n - c + 1):
            t = 0
            for j in range(c):
                d = 0
                pj = p[i + j]
                for k in range(j + 1, c):
                    if p[i + k] < pj:
                        d += 1
                t += d * cfact[c - 1 - j]
            if part_id[t] < 0:
                continue
            lo = partners_ptr[t]
            hi = partners_ptr[t + 1]
            if lo == hi:
                continue
            for j in range(c):
                sw[j] = p[i + j]
            for a in range(1, c):
                key = sw[a]
                b = a - 1
                while b >= 0 and sw[b] > key:
                    sw[b + 1] = sw[b]
                    b -= 1
                sw[b + 1] = key
            for s in range(c):
                tail[s] = 0
            for k in range(i + c, n):
                x = p[k]
                for s in range(c):
                    if x < sw[s]:
                        tail[s] += 1
            base_t = 0
            for j in range(c):
                base_t += (pat_digits[t, j] + tail[pat_onel[t, j] - 1]) * fact[n - 1 - i - j]
            for e in range(lo, hi):
                q = partners_idx[e]
                base_q = 0
                for j in range(c):
                    base_q += (pat_digits[q, j] + tail[pat_onel[q, j] - 1]) * fact[n - 1 - i - j]
                src[m] = r
                dst[m] = r - base_t + base_q
                m += 1
        _next_perm(p)
        r += 1
    return m


@_jit
def subword_edges_block(
    n, c, start, count, fact, cfact,
    part_id, pat_onel, partners_ptr, partners_idx, comb,
    src, dst,
):
    p = np.empty(n, np.int64)
    _unrank_into(start, n, fact, p)
    tmp = np.empty(n, np.int64)
    sw = np.empty(c, np.int64)
    ncomb = comb.shape[0]
    m = 0
    r = start
    for _ in range(count):
        for ci in range(ncomb):
            t = 0
            for j in range(c):
                d = 0
                pj = p[comb[ci, j]]
                for k in range(j + 1, c):
                    if p[comb[ci, k]] < pj:
                        d += 1
                t += d * cfact[c - 1 - j]
            if part_id[t] < 0:
                continue
            lo = partners_ptr[t]
            hi = partners_ptr[t + 1]
            if lo == hi:
                continue
            for j in range(c):
                sw[j] = p[comb[ci, j]]
            for a in range(1, c):
                key = sw[a]
                b = a - 1
                while b >= 0 and sw[b] > key:
                    sw[b + 1] = sw[b]
                    b -= 1
                sw[b + 1] = key
            for e in range(lo, hi):
                q = partners_idx[e]
                for a in range(n):
                    tmp[a] = p[a]
                for j in range(c):
                    tmp[comb[ci, j]] = sw[pat_onel[q, j] - 1]
                r2 = 0
                for a in range(n):
                    d = 0
                    ta = tmp[a]
                    for b in range(a + 1, n):
                        if tmp[b] < ta:
                            d += 1
                    r2 += d * fact[n - 1 - a]
                src[m] = r
                dst[m] = r2
                m += 1
        _next_perm(p)
        r += 1
    return m


@_jit
def count_banned_avoiders_block(n, c, start, count, fact, cfact, banned):
    p = np.empty(n, np.int64)
    _unrank_into(start, n, fact, p)
    cnt = 0
    for _ in range(count):
        ok = True
        for i in range(n - c + 1):
            t = 0
            for j in range(c):
                d = 0
                pj = p[i + j]
                for k in range(j + 1, c):
                    if p[i + k] < pj:
                        d += 1
                t += d * cfact[c - 1 - j]
            if banned[t]:
                ok = False
                break
        if ok:
            cnt += 1
        _next_perm(p)
    return cnt


@_jit
def apply_unions(parent, size, src, dst, m):
    for e in range(m):
        a = src[e]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = dst[e]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]


@_jit
def relabel_by_min_member(parent):
    # class ids in order of each class's minimal rank; deterministic
    total = parent.shape[0]
    class_id = np.empty(total, np.int32)
    label = np.full(total, -1, np.int32)
    nxt = 0
    for r in range(total):
        a = r
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        if label[a] < 0:
            label[a] = nxt
            nxt += 1
        class_id[r] = label[a]
    return class_id, nxt
