"""Hot numeric kernels.

Two kernels dominate runtime: pushing tensor basis elements forward along a
position map (every face of every basis element), and rank over a prime
field.  Each has a numba version and a numpy version; which one runs is
decided by :mod:`hochschild._accel`.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

# primes below this bound keep every product of residues inside int64
SMALL_PRIME_BOUND = 1 << 31
DENSE_FALLBACK_LIMIT = 40_000_000


# -- push forward ------------------------------------------------------------

def _push_forward_numpy(rows, posmap, base_src, base_tgt, n_tgt, unit,
                        mult_idx, mult_coef, act_idx, act_coef):
    E, P = rows.shape
    out = np.full((E, n_tgt), unit, dtype=np.int64)
    out[:, base_tgt] = rows[:, base_src]
    coef = np.ones(E, dtype=np.int64)
    for p in range(P):
        if p == base_src:
            continue
        a = rows[:, p]
        q = posmap[p]
        cur = out[:, q]
        if q == base_tgt:
            k = act_idx[a, cur]
            c = act_coef[a, cur]
        else:
            k = mult_idx[cur, a]
            c = mult_coef[cur, a]
        dead = k < 0
        coef *= np.where(dead, 0, c)
        out[:, q] = np.where(dead, cur, k)
    return out, coef


@njit
def _push_forward_jit(rows, posmap, base_src, base_tgt, n_tgt, unit,
                      mult_idx, mult_coef, act_idx, act_coef):
    E, P = rows.shape
    out = np.empty((E, n_tgt), dtype=np.int64)
    coef = np.ones(E, dtype=np.int64)
    for e in range(E):
        for q in range(n_tgt):
            out[e, q] = unit
        out[e, base_tgt] = rows[e, base_src]
        for p in range(P):
            if p == base_src:
                continue
            a = rows[e, p]
            if a == unit:
                continue
            q = posmap[p]
            cur = out[e, q]
            if q == base_tgt:
                k = act_idx[a, cur]
                c = act_coef[a, cur]
            else:
                k = mult_idx[cur, a]
                c = mult_coef[cur, a]
            if k < 0:
                coef[e] = 0
                break
            coef[e] *= c
            out[e, q] = k
    return out, coef


def push_forward(rows, posmap, base_src, base_tgt, n_tgt, unit,
                 mult_idx, mult_coef, act_idx, act_coef):
    """Push tensor rows along a position map, multiplying colliding entries.

    ``rows[e, p]`` is an algebra basis index, except at ``base_src`` where it
    is a module basis index.  Returns the image rows and integer
    coefficients; coefficient 0 marks a vanished product.
    """
    fn = _push_forward_jit if HAVE_NUMBA else _push_forward_numpy
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    return fn(rows, np.asarray(posmap, dtype=np.int64), int(base_src), int(base_tgt),
              int(n_tgt), int(unit), mult_idx, mult_coef, act_idx, act_coef)


# -- rank over F_p -------------------------------------------------------------

@njit
def _inv_mod(a, p):
    t, new_t, r, new_r = 0, 1, p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


@njit
def _heap_push(heap, size, x):
    i = size
    heap[i] = x
    while i > 0:
        parent = (i - 1) // 2
        if heap[parent] >= heap[i]:
            break
        heap[parent], heap[i] = heap[i], heap[parent]
        i = parent
    return size + 1


@njit
def _heap_pop(heap, size):
    top = heap[0]
    size -= 1
    heap[0] = heap[size]
    i = 0
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        big = left
        if left + 1 < size and heap[left + 1] > heap[left]:
            big = left + 1
        if heap[i] >= heap[big]:
            break
        heap[i], heap[big] = heap[big], heap[i]
        i = big
    return top, size


@njit
def _rank_sparse_mod_p(indptr, indices, data, nrows, p):
    """Column reduction with lowest-row pivots; columns taken in order."""
    ncols = indptr.shape[0] - 1
    pivot_slot = np.full(nrows, -1, dtype=np.int64)
    cap = max(64, 2 * indices.shape[0])
    pool_r = np.empty(cap, dtype=np.int64)
    pool_v = np.empty(cap, dtype=np.int64)
    slot_start = np.empty(nrows + 1, dtype=np.int64)
    slot_len = np.empty(nrows + 1, dtype=np.int64)
    used = 0
    rank = 0
    acc = np.zeros(nrows, dtype=np.int64)
    inheap = np.zeros(nrows, dtype=np.bool_)
    heap = np.empty(nrows, dtype=np.int64)
    size = 0
    for c in range(ncols):
        for k in range(indptr[c], indptr[c + 1]):
            r = indices[k]
            acc[r] = (acc[r] + data[k]) % p
            if not inheap[r]:
                inheap[r] = True
                size = _heap_push(heap, size, r)
        while True:
            while size > 0 and acc[heap[0]] == 0:
                r, size = _heap_pop(heap, size)
                inheap[r] = False
            if size == 0:
                break
            r = heap[0]
            s = pivot_slot[r]
            if s < 0:
                if used + size > cap:
                    newcap = max(2 * cap, used + size)
                    pr = np.empty(newcap, dtype=np.int64)
                    pv = np.empty(newcap, dtype=np.int64)
                    pr[:used] = pool_r[:used]
                    pv[:used] = pool_v[:used]
                    pool_r, pool_v, cap = pr, pv, newcap
                inv = _inv_mod(acc[r], p)
                slot_start[rank] = used
                while size > 0:
                    x, size = _heap_pop(heap, size)
                    inheap[x] = False
                    if acc[x] != 0:
                        pool_r[used] = x
                        pool_v[used] = acc[x] * inv % p
                        used += 1
                        acc[x] = 0
                slot_len[rank] = used - slot_start[rank]
                pivot_slot[r] = rank
                rank += 1
                break
            factor = acc[r]
            st = slot_start[s]
            for k in range(st, st + slot_len[s]):
                x = pool_r[k]
                acc[x] = (acc[x] - factor * pool_v[k]) % p
                if not inheap[x] and acc[x] != 0:
                    inheap[x] = True
                    size = _heap_push(heap, size, x)
    return rank


def _rank_dense_numpy(indptr, indices, data, nrows, p):
    ncols = len(indptr) - 1
    A = np.zeros((nrows, ncols), dtype=np.int64)
    cols = np.repeat(np.arange(ncols), np.diff(indptr))
    np.add.at(A, (indices, cols), data)
    A %= p
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        below = A[r + 1:]
        hit = np.flatnonzero(below[:, c])
        if hit.size:
            below[hit] = (below[hit] - np.outer(below[hit, c], A[r])) % p
        r += 1
    return r


def rank_mod_p_arrays(indptr, indices, data, nrows, p) -> int:
    """Rank of a CSC integer matrix over F_p (p below 2**31)."""
    if p >= SMALL_PRIME_BOUND:
        raise ValueError("array kernels need p < 2**31")
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    data = np.asarray(data, dtype=np.int64) % p
    ncols = len(indptr) - 1
    if nrows == 0 or ncols == 0:
        return 0
    if HAVE_NUMBA:
        return int(_rank_sparse_mod_p(indptr, indices, data, nrows, p))
    if nrows * ncols <= DENSE_FALLBACK_LIMIT:
        return int(_rank_dense_numpy(indptr, indices, data, nrows, p))
    return int(_rank_sparse_mod_p(indptr, indices, data, nrows, p))
