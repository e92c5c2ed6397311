# cython: language_level=3
"""Compiled inner loops for line-graph searches.

All graph arguments use the flat layout produced by
``tightcycle.linegraph.LineGraph.kernel_arrays``: ``gcoords[v*r + a]`` is the
global coordinate id of vertex ``v`` on axis ``a``; ``block_of[a*n + v]`` is
the global block id of ``v`` along axis ``a``; block ``b`` owns
``members[bptr[b]:bptr[b+1]]`` (ascending vertex ids).
"""

import numpy as np

from libc.stdint cimport int64_t, uint32_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil

MAX_EXHAUSTIVE = 26


def boundary_minima(adj_masks, int n, int max_size):
    """For each size s in 1..max_size, the minimum |N(X)| over |X| = s.

    Returns ``(best, argmask)`` lists indexed by size; index 0 is unused.
    Ties keep the smallest mask.
    """
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration refused for n={n}")
    if max_size > n:
        max_size = n
    cdef Py_ssize_t total = (<Py_ssize_t>1) << n
    cdef uint32_t* U = <uint32_t*>malloc(total * sizeof(uint32_t))
    cdef uint32_t adj[32]
    cdef int64_t best[33]
    cdef uint32_t arg[33]
    cdef Py_ssize_t m
    cdef uint32_t low, mm
    cdef int s, nb, i
    if U == NULL:
        raise MemoryError()
    for i in range(n):
        adj[i] = <uint32_t>adj_masks[i]
    for i in range(max_size + 1):
        best[i] = n + 1
        arg[i] = 0
    U[0] = 0
    with nogil:
        for m in range(1, total):
            mm = <uint32_t>m
            low = mm & (~mm + 1)
            U[m] = U[mm ^ low] | adj[__builtin_ctz(low)]
            s = __builtin_popcount(mm)
            if s <= max_size:
                nb = __builtin_popcount(U[m] & ~mm)
                if nb < best[s]:
                    best[s] = nb
                    arg[s] = mm
    free(U)
    return [best[i] for i in range(max_size + 1)], [arg[i] for i in range(max_size + 1)]


def sigma_expand(const int64_t[::1] frontier, const int64_t[::1] fptr,
                 const int64_t[::1] fids, const int64_t[::1] gcoords,
                 const int64_t[::1] block_of, const int64_t[::1] bptr,
                 const int64_t[::1] members, const int64_t[::1] sigma,
                 int r, int n, int ncoords):
    """One sigma-boundary sweep with per-source forbidden coordinates.

    Frontier vertices are scanned in the given order; each reached vertex is
    claimed by the first source that reaches it. Returns ``(ys, preds)``.
    """
    out_y = np.empty(n, dtype=np.int64)
    out_x = np.empty(n, dtype=np.int64)
    mark_arr = np.zeros(max(ncoords, 1), dtype=np.int64)
    claim_arr = np.zeros(max(n, 1), dtype=np.uint8)
    cdef int64_t[::1] oy = out_y
    cdef int64_t[::1] ox = out_x
    cdef int64_t[::1] mark = mark_arr
    cdef unsigned char[::1] claimed = claim_arr
    cdef int64_t z[33]
    cdef int64_t pos[33]
    cdef int64_t end[33]
    cdef Py_ssize_t fi, k, cnt = 0
    cdef int64_t x, w, b, stamp
    cdef int level, a
    if r > 32:
        raise ValueError("r > 32 unsupported")
    with nogil:
        for fi in range(frontier.shape[0]):
            x = frontier[fi]
            stamp = fi + 1
            for k in range(fptr[fi], fptr[fi + 1]):
                mark[fids[k]] = stamp
            level = 0
            z[0] = x
            b = block_of[sigma[0] * n + x]
            pos[0] = bptr[b]
            end[0] = bptr[b + 1]
            while level >= 0:
                if pos[level] == end[level]:
                    level -= 1
                    continue
                w = members[pos[level]]
                pos[level] += 1
                if w == z[level]:
                    continue
                a = <int>sigma[level]
                if mark[gcoords[w * r + a]] == stamp:
                    continue
                if level == r - 1:
                    if not claimed[w]:
                        claimed[w] = 1
                        oy[cnt] = w
                        ox[cnt] = x
                        cnt += 1
                else:
                    level += 1
                    z[level] = w
                    b = block_of[sigma[level] * n + w]
                    pos[level] = bptr[b]
                    end[level] = bptr[b + 1]
    return out_y[:cnt], out_x[:cnt]


def sweep_profile(const int64_t[::1] order, const int64_t[::1] block_of,
                  const int64_t[::1] bptr, const int64_t[::1] members,
                  int r, int n):
    """``prof[k] = |N(order[:k+1])|`` for every prefix of ``order``."""
    prof_arr = np.zeros(order.shape[0], dtype=np.int64)
    in_s_arr = np.zeros(max(n, 1), dtype=np.uint8)
    in_n_arr = np.zeros(max(n, 1), dtype=np.uint8)
    cdef int64_t[::1] prof = prof_arr
    cdef unsigned char[::1] in_s = in_s_arr
    cdef unsigned char[::1] in_n = in_n_arr
    cdef Py_ssize_t k, j
    cdef int64_t v, w, b, nb = 0
    cdef int a
    with nogil:
        for k in range(order.shape[0]):
            v = order[k]
            if in_n[v]:
                in_n[v] = 0
                nb -= 1
            in_s[v] = 1
            for a in range(r):
                b = block_of[a * n + v]
                for j in range(bptr[b], bptr[b + 1]):
                    w = members[j]
                    if not in_s[w] and not in_n[w]:
                        in_n[w] = 1
                        nb += 1
            prof[k] = nb
    return prof_arr


def bfs_order(int64_t start, const int64_t[::1] block_of, const int64_t[::1] bptr,
              const int64_t[::1] members, int r, int n):
    """Breadth-first order of the component of ``start``.

    Neighbours are scanned axis by axis, each block in ascending id order.
    """
    order_arr = np.empty(n, dtype=np.int64)
    seen_arr = np.zeros(max(n, 1), dtype=np.uint8)
    cdef int64_t[::1] order = order_arr
    cdef unsigned char[::1] seen = seen_arr
    cdef Py_ssize_t head = 0, tail = 1, j
    cdef int64_t v, w, b
    cdef int a
    order[0] = start
    seen[start] = 1
    with nogil:
        while head < tail:
            v = order[head]
            head += 1
            for a in range(r):
                b = block_of[a * n + v]
                for j in range(bptr[b], bptr[b + 1]):
                    w = members[j]
                    if not seen[w]:
                        seen[w] = 1
                        order[tail] = w
                        tail += 1
    return order_arr[:tail]
