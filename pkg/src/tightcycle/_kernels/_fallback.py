"""Pure-Python/numpy versions of the compiled kernels in ``_core.pyx``.

Same signatures and same outputs, including tie-breaking and scan order.
"""

from __future__ import annotations

import numpy as np

MAX_EXHAUSTIVE = 26


def _popcount(a: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a).astype(np.int64)
    a = a.astype(np.uint32)
    a = a - ((a >> 1) & 0x55555555)
    a = (a & 0x33333333) + ((a >> 2) & 0x33333333)
    a = (a + (a >> 4)) & 0x0F0F0F0F
    return ((a * 0x01010101) >> 24).astype(np.int64)


def boundary_minima(adj_masks, n: int, max_size: int):
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration refused for n={n}")
    max_size = min(max_size, n)
    best = [n + 1] * (max_size + 1)
    arg = [0] * (max_size + 1)
    if n == 0:
        return best, arg
    U = np.zeros(1 << n, dtype=np.uint32)
    for i in range(n):
        U[1 << i : 1 << (i + 1)] = U[: 1 << i] | np.uint32(adj_masks[i])
    masks = np.arange(1 << n, dtype=np.uint32)
    sizes = _popcount(masks)
    nb = _popcount(U & ~masks)
    for s in range(1, max_size + 1):
        sel = np.flatnonzero(sizes == s)
        j = sel[np.argmin(nb[sel])]
        best[s] = int(nb[j])
        arg[s] = int(j)
    return best, arg


def sigma_expand(frontier, fptr, fids, gcoords, block_of, bptr, members, sigma, r, n, ncoords):
    frontier = frontier.tolist()
    fptr = fptr.tolist()
    fids = fids.tolist()
    gcoords = gcoords.tolist()
    block_of = block_of.tolist()
    bptr = bptr.tolist()
    members = members.tolist()
    sigma = sigma.tolist()
    claimed = bytearray(n)
    ys: list[int] = []
    xs: list[int] = []
    last = r - 1
    for fi, x in enumerate(frontier):
        forbidden = set(fids[fptr[fi] : fptr[fi + 1]])
        stack = [(0, x)]
        # explicit stack reproduces the compiled DFS order exactly
        while stack:
            level, z = stack.pop()
            a = sigma[level]
            b = block_of[a * n + z]
            nxt = []
            for w in members[bptr[b] : bptr[b + 1]]:
                if w == z or gcoords[w * r + a] in forbidden:
                    continue
                if level == last:
                    if not claimed[w]:
                        claimed[w] = 1
                        ys.append(w)
                        xs.append(x)
                else:
                    nxt.append((level + 1, w))
            stack.extend(reversed(nxt))
    return np.asarray(ys, dtype=np.int64), np.asarray(xs, dtype=np.int64)


def sweep_profile(order, block_of, bptr, members, r, n):
    order = order.tolist()
    block_of = block_of.tolist()
    bptr = bptr.tolist()
    members = members.tolist()
    in_s = bytearray(n)
    in_n = bytearray(n)
    nb = 0
    prof = []
    for v in order:
        if in_n[v]:
            in_n[v] = 0
            nb -= 1
        in_s[v] = 1
        for a in range(r):
            b = block_of[a * n + v]
            for w in members[bptr[b] : bptr[b + 1]]:
                if not in_s[w] and not in_n[w]:
                    in_n[w] = 1
                    nb += 1
        prof.append(nb)
    return np.asarray(prof, dtype=np.int64)


def bfs_order(start, block_of, bptr, members, r, n):
    block_of = block_of.tolist()
    bptr = bptr.tolist()
    members = members.tolist()
    seen = bytearray(n)
    seen[start] = 1
    order = [start]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for a in range(r):
            b = block_of[a * n + v]
            for w in members[bptr[b] : bptr[b + 1]]:
                if not seen[w]:
                    seen[w] = 1
                    order.append(w)
    return np.asarray(order, dtype=np.int64)
