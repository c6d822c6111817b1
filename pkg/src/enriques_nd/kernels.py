"""Hot inner loops: batched intersection products, exact PSD/corank tests and
maximum-clique search.

Every kernel exists twice. The ``_nb`` variants are plain loops compiled with
numba when it is available; the ``_np`` variants use numpy vectorisation or
Python integers. The public names dispatch to the numba path unless it was
disabled (see :mod:`enriques_nd._accel`). Both paths are exact; int64 is only
used after an explicit magnitude check.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, jit

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# |a*b| for two int64 minors must stay below 2**63.
_MINOR_LIMIT = 2 ** 31


def hadamard_bound(mat):
    """Upper bound for the absolute value of every minor of ``mat``."""
    bound = 1
    for row in np.asarray(mat, dtype=object):
        norm_sq = sum(int(x) * int(x) for x in row)
        bound *= math.isqrt(norm_sq) + 1
    return bound


def _small_minors(mat):
    """Cheap check that ``hadamard_bound(mat) < _MINOR_LIMIT``.

    Works in float log space with one bit of slack; entries beyond 2**20
    take the exact route.
    """
    if mat.dtype == object or np.max(np.abs(mat)) > 2 ** 20:
        return hadamard_bound(mat) < _MINOR_LIMIT
    norms = np.sqrt(np.sum(mat.astype(np.float64) ** 2, axis=1)) + 1.0
    return float(np.sum(np.log2(norms))) < math.log2(_MINOR_LIMIT) - 1.0


# ---------------------------------------------------------------- products

def _pairwise_products_py(rows, gram):
    n, d = rows.shape
    out = np.zeros((n, n), dtype=np.int64)
    tmp = np.zeros((n, d), dtype=np.int64)
    for i in range(n):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc += rows[i, k] * gram[k, j]
            tmp[i, j] = acc
    for i in range(n):
        for j in range(i, n):
            acc = 0
            for k in range(d):
                acc += tmp[i, k] * rows[j, k]
            out[i, j] = acc
            out[j, i] = acc
    return out


def _pairwise_products_np(rows, gram):
    return rows @ gram @ rows.T


# ---------------------------------------------------------------- PSD test

def _psd_corank_py(mat):
    # Fraction-free symmetric elimination. A zero pivot is only allowed when
    # its whole remaining row vanishes; that index is then a kernel direction
    # and is dropped without touching the other entries.
    n = mat.shape[0]
    a = mat.copy()
    alive = np.ones(n, dtype=np.bool_)
    prev = 1
    corank = 0
    for k in range(n):
        p = a[k, k]
        if p < 0:
            return -1
        if p == 0:
            for j in range(k + 1, n):
                if alive[j] and a[k, j] != 0:
                    return -1
            alive[k] = False
            corank += 1
            continue
        for i in range(k + 1, n):
            if not alive[i]:
                continue
            for j in range(i, n):
                if not alive[j]:
                    continue
                v = (p * a[i, j] - a[i, k] * a[k, j]) // prev
                a[i, j] = v
                a[j, i] = v
        prev = p
    return corank


def _psd_corank_np(mat):
    a = [[int(x) for x in row] for row in mat]
    n = len(a)
    alive = [True] * n
    prev = 1
    corank = 0
    for k in range(n):
        p = a[k][k]
        if p < 0:
            return -1
        if p == 0:
            if any(alive[j] and a[k][j] for j in range(k + 1, n)):
                return -1
            alive[k] = False
            corank += 1
            continue
        rest = [i for i in range(k + 1, n) if alive[i]]
        for i in rest:
            aik = a[i][k]
            row = a[i]
            for j in rest:
                if j >= i:
                    row[j] = (p * row[j] - aik * a[k][j]) // prev
                    a[j][i] = row[j]
        prev = p
    return corank


# ---------------------------------------------------------------- cliques

def _max_clique_py(adj, cap):
    # Iterative DFS over candidates kept in input order. The bound
    # depth + remaining <= best prunes only branches that cannot beat the
    # incumbent, so the first clique of the final size found is the
    # lexicographically smallest one.
    n = adj.shape[0]
    if n == 0 or cap <= 0:
        return np.zeros(0, dtype=np.int64)
    depth_max = min(cap, n) + 1
    cand = np.zeros((depth_max, n), dtype=np.int64)
    cnt = np.zeros(depth_max, dtype=np.int64)
    pos = np.zeros(depth_max, dtype=np.int64)
    cur = np.zeros(depth_max, dtype=np.int64)
    best = np.zeros(depth_max, dtype=np.int64)
    best_size = 0
    for i in range(n):
        cand[0, i] = i
    cnt[0] = n
    d = 0
    while d >= 0:
        if pos[d] >= cnt[d] or d + cnt[d] - pos[d] <= best_size:
            d -= 1
            continue
        v = cand[d, pos[d]]
        pos[d] += 1
        cur[d] = v
        if d + 1 > best_size:
            best_size = d + 1
            for t in range(best_size):
                best[t] = cur[t]
            if best_size >= cap:
                break
        if d + 1 >= depth_max:
            continue
        k = 0
        for j in range(pos[d], cnt[d]):
            u = cand[d, j]
            if adj[v, u]:
                cand[d + 1, k] = u
                k += 1
        if k > 0:
            cnt[d + 1] = k
            pos[d + 1] = 0
            d += 1
    return best[:best_size].copy()


def _max_clique_np(adj, cap):
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    best = []

    def grow(clique, cand):
        nonlocal best
        if len(best) >= cap:
            return
        if len(clique) > len(best):
            best = list(clique)
            if len(best) >= cap:
                return
        idx = np.flatnonzero(cand)
        for t, v in enumerate(idx):
            if len(clique) + len(idx) - t <= len(best):
                return
            nxt = cand & adj[v]
            nxt[: v + 1] = False
            clique.append(int(v))
            grow(clique, nxt)
            clique.pop()
            if len(best) >= cap:
                return

    if n and cap > 0:
        grow([], np.ones(n, dtype=bool))
    return np.asarray(best, dtype=np.int64)


pairwise_products_nb = jit(_pairwise_products_py)
psd_corank_nb = jit(_psd_corank_py)
max_clique_nb = jit(_max_clique_py)

pairwise_products_np = _pairwise_products_np
psd_corank_np = _psd_corank_np
max_clique_np = _max_clique_np


def pairwise_products(rows, gram, *, backend=None):
    """Matrix of products ``rows[i] G rows[j]^T``, exact.

    Falls back to Python integers when int64 could overflow.
    """
    rows = np.asarray(rows)
    gram = np.asarray(gram)
    if rows.size == 0:
        return np.zeros((rows.shape[0], rows.shape[0]), dtype=np.int64)
    m = int(np.max(np.abs(rows.astype(object)))) if rows.size else 0
    g = int(np.max(np.abs(gram.astype(object))))
    d = rows.shape[1]
    if d * d * g * m * m >= 2 ** 62:
        obj = rows.astype(object)
        return obj @ gram.astype(object) @ obj.T
    rows = rows.astype(np.int64)
    gram = gram.astype(np.int64)
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return pairwise_products_nb(rows, gram)
    return pairwise_products_np(rows, gram)


def psd_corank(mat, *, backend=None):
    """Return the corank of the symmetric integer matrix ``mat`` if it is
    positive semidefinite, else ``-1``."""
    mat = np.asarray(mat)
    if mat.shape[0] == 0:
        return 0
    # every 2x2 principal minor of a semidefinite matrix is >= 0
    diag = np.diagonal(mat)
    if mat.dtype != object and np.max(np.abs(mat)) < 2 ** 31:
        if np.any(diag < 0) or np.any(mat.astype(np.int64) ** 2 > np.outer(diag, diag)):
            return -1
    use_nb = (backend or BACKEND) == "numba" and HAVE_NUMBA
    if use_nb and _small_minors(mat):
        return int(psd_corank_nb(mat.astype(np.int64)))
    return psd_corank_np(mat)


def max_clique(adj, cap=10, *, backend=None):
    """Lexicographically first maximum clique (indices ascending), searching
    no further once ``cap`` vertices are reached."""
    adj = np.ascontiguousarray(adj, dtype=np.bool_)
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return max_clique_nb(adj, int(cap))
    return max_clique_np(adj, int(cap))
