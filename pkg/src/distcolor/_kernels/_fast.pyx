# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pure.py``; same inputs, same outputs."""

from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map

ctypedef long long i64

from distcolor.errors import BudgetExceeded
from distcolor._kernels import _pure


cdef bint _fits(vector[int]& colors, vector[int]& pid, int n, int i, int col, int d):
    cdef int lo = i - d if i - d > 0 else 0
    cdef int hi = i + d + 1 if i + d + 1 < n else n
    cdef int j
    for j in range(lo, hi):
        if j != i and colors[j] == col and pid[j] == pid[i]:
            return False
    return True


cdef tuple _state_key(int k, vector[int]& col, vector[int]& rem, bint use_rem, int i, int d):
    cdef int lo = i - d if i - d > 0 else 0
    window = tuple([col[j] for j in range(lo, i)])
    return (k, window, tuple(rem) if use_rem else None)


def extension_search(path_id, colors, allowed, int d, remaining):
    cdef int n = len(colors)
    cdef vector[int] col = colors
    cdef vector[int] pid = path_id
    cdef int i, j, k, c, m
    for i in range(n):
        if col[i] == 0:
            continue
        for j in range(i + 1, min(n, i + d + 1)):
            if col[j] == col[i] and pid[j] == pid[i]:
                return None

    cdef vector[int] free
    for i in range(n):
        if col[i] == 0:
            free.push_back(i)
    cdef int nfree = free.size()

    cdef bint use_rem = remaining is not None
    cdef vector[int] rem
    if use_rem:
        rem = remaining
        if sum(remaining) != nfree or min(remaining, default=0) < 0:
            return None

    cdef vector[int] off
    cdef vector[int] flat
    for i in range(n):
        off.push_back(flat.size())
        for c in allowed[i]:
            flat.push_back(c)
    off.push_back(flat.size())

    cdef vector[int] choice = vector[int](nfree, -1)
    cdef set dead = set()
    k = 0
    while 0 <= k < nfree:
        i = free[k]
        if choice[k] < 0:
            if _state_key(k, col, rem, use_rem, i, d) in dead:
                k -= 1
                continue
        else:
            c = col[i]
            col[i] = 0
            if use_rem:
                rem[c] += 1
        j = choice[k] + 1
        m = off[i + 1] - off[i]
        while j < m:
            c = flat[off[i] + j]
            if (not use_rem or rem[c] > 0) and _fits(col, pid, n, i, c, d):
                break
            j += 1
        if j < m:
            col[i] = c
            if use_rem:
                rem[c] -= 1
            choice[k] = j
            k += 1
        else:
            choice[k] = -1
            dead.add(_state_key(k, col, rem, use_rem, i, d))
            k -= 1
    if k < 0:
        return None
    return [col[i] for i in range(n)]


def window_dp(int n, int c, int d, pre, rho, i64 cap):
    if sum(rho) != n:
        return None
    base = c + 1
    wmod_py = base ** d
    radix_py = 1
    for r in rho:
        radix_py *= r + 1
    if wmod_py * radix_py >= 2 ** 62:
        return _pure.window_dp(n, c, d, pre, rho, cap)

    cdef i64 cbase = base
    cdef i64 wmod = wmod_py
    cdef i64 radix = radix_py
    cdef vector[i64] weight = vector[i64](c + 1, 0)
    cdef vector[int] rh = vector[int](c + 1, 0)
    cdef i64 w = 1
    cdef int col, i, t
    for col in range(1, c + 1):
        weight[col] = w
        rh[col] = rho[col - 1]
        w *= rh[col] + 1
    cdef vector[int] pr = pre

    cdef vector[vector[int]] pending = vector[vector[int]](n + 1, vector[int](c + 1, 0))
    for i in range(n - 1, -1, -1):
        pending[i] = pending[i + 1]
        if i + 1 < n and pr[i + 1]:
            pending[i][pr[i + 1]] += 1

    # per layer: keys in insertion order, parent index into previous layer, color
    cdef vector[vector[int]] parent
    cdef vector[vector[int]] color
    cdef unordered_map[i64, int] seen
    cdef vector[i64] cur
    cur.push_back(0)
    cdef vector[i64] nkeys
    cdef vector[int] npar, ncol
    cdef i64 key, window, usage, x, nkey
    cdef int lo, hi, used, idx
    cdef bint hit
    for i in range(n):
        nkeys.clear()
        npar.clear()
        ncol.clear()
        seen.clear()
        if pr[i]:
            lo = pr[i]
            hi = pr[i]
        else:
            lo = 1
            hi = c
        for idx in range(<int>cur.size()):
            key = cur[idx]
            window = key // radix
            usage = key % radix
            for col in range(lo, hi + 1):
                x = window
                hit = False
                for t in range(d):
                    if x % cbase == col:
                        hit = True
                        break
                    x //= cbase
                if hit:
                    continue
                used = <int>((usage // weight[col]) % (rh[col] + 1))
                if used + 1 + pending[i][col] > rh[col]:
                    continue
                nkey = ((window * cbase + col) % wmod) * radix + usage + weight[col]
                if seen.count(nkey) == 0:
                    seen[nkey] = nkeys.size()
                    nkeys.push_back(nkey)
                    npar.push_back(idx)
                    ncol.push_back(col)
        if <i64>nkeys.size() > cap:
            raise BudgetExceeded(f"window DP layer {i + 1} holds {nkeys.size()} states (cap {cap})")
        if nkeys.size() == 0:
            return None
        parent.push_back(npar)
        color.push_back(ncol)
        cur = nkeys

    out = [0] * n
    idx = 0
    for i in range(n - 1, -1, -1):
        out[i] = color[i][idx]
        idx = parent[i][idx]
    return out
