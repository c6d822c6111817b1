"""Exact arithmetic in the E10 lattice.

Coordinates are taken in the basis e1..e10 of the diagram

        e1
        |
    e2--e3--e4--e5--e6--e7--e8--e9--e10

i.e. e1 is attached to e4 and e2..e10 form a chain. Classes are row vectors;
isometries act on the right, ``v -> v @ M``.
"""
from fractions import Fraction

import numpy as np

from .errors import NonSymmetric, NotDivisible, NotIsometry
from .kernels import pairwise_products

RANK = 10
# Magnitude cap keeping every single product u G v^T inside int64.
COORD_LIMIT = 2 ** 27


def _e10_gram():
    g = -2 * np.eye(RANK, dtype=np.int64)
    edges = [(0, 3)] + [(i, i + 1) for i in range(1, RANK - 1)]
    for i, j in edges:
        g[i, j] = g[j, i] = 1
    g.setflags(write=False)
    return g


GRAM = _e10_gram()


def vector(coords):
    """Validate ``coords`` as a read-only int64 lattice vector."""
    arr = np.asarray(coords)
    if arr.shape != (RANK,):
        raise ValueError(f"expected {RANK} coordinates, got shape {arr.shape}")
    if arr.dtype.kind not in "iu" and arr.dtype != object:
        if not np.all(np.mod(arr, 1) == 0):
            raise ValueError("lattice coordinates must be integers")
    if any(abs(int(x)) > COORD_LIMIT for x in arr):
        raise OverflowError(f"coordinate exceeds {COORD_LIMIT}")
    out = arr.astype(np.int64)
    out.setflags(write=False)
    return out


def dot(u, v):
    u = vector(u)
    v = vector(v)
    return int(u @ GRAM @ v)


def square(v):
    return dot(v, v)


def is_two_divisible(v):
    return bool(np.all(vector(v) % 2 == 0))


def halve(v):
    v = vector(v)
    if np.any(v % 2):
        raise NotDivisible(f"{tuple(int(x) for x in v)} has an odd coordinate")
    return vector(v // 2)


class RationalClass:
    """``numerator / denominator`` with denominator 1 or 2, in lowest terms."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1):
        if denominator not in (1, 2):
            raise ValueError("denominator must be 1 or 2")
        num = vector(numerator)
        if denominator == 2 and not np.any(num % 2):
            num, denominator = vector(num // 2), 1
        self.numerator = num
        self.denominator = denominator

    @property
    def is_integral(self):
        return self.denominator == 1

    def integral(self):
        if not self.is_integral:
            raise NotDivisible(f"{self!r} is not integral")
        return self.numerator

    def __eq__(self, other):
        if not isinstance(other, RationalClass):
            return NotImplemented
        return (self.denominator == other.denominator
                and np.array_equal(self.numerator, other.numerator))

    def __hash__(self):
        return hash((tuple(int(x) for x in self.numerator), self.denominator))

    def __repr__(self):
        coords = ", ".join(str(int(x)) for x in self.numerator)
        if self.denominator == 1:
            return f"RationalClass(({coords}))"
        return f"RationalClass(({coords})/2)"


def product_matrix(rows):
    """All pairwise products of the given classes, as an int64 (or exact
    object) array."""
    rows = np.asarray(rows)
    if rows.ndim != 2 or (rows.size and rows.shape[1] != RANK):
        raise ValueError("expected an (n, 10) array of coordinates")
    return pairwise_products(rows.reshape(-1, RANK), GRAM)


def matmul(a, b):
    """Exact integer matrix product; switches to Python ints on overflow risk."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.size == 0 or b.size == 0:
        return (a.astype(np.int64) @ b.astype(np.int64))
    ma = int(np.max(np.abs(a.astype(object))))
    mb = int(np.max(np.abs(b.astype(object))))
    if ma * mb * a.shape[-1] < 2 ** 62:
        return a.astype(np.int64) @ b.astype(np.int64)
    out = a.astype(object) @ b.astype(object)
    if int(np.max(np.abs(out))) >= 2 ** 62:
        raise OverflowError("matrix entries exceed the int64 range")
    return out.astype(np.int64)


def validate_isometry(m):
    """Return ``m`` as a read-only int64 array if ``m G m^T == G``."""
    arr = np.asarray(m)
    if arr.shape != (RANK, RANK):
        raise ValueError(f"expected a {RANK}x{RANK} matrix, got {arr.shape}")
    arr = arr.astype(np.int64)
    got = matmul(matmul(arr, GRAM), arr.T)
    bad = np.argwhere(got != GRAM)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        raise NotIsometry(i, j, int(got[i, j]), int(GRAM[i, j]))
    arr.setflags(write=False)
    return arr


def _as_int_rows(mat):
    rows = [[int(x) for x in row] for row in np.asarray(mat, dtype=object)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return rows


def _check_symmetric(rows):
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NonSymmetric(f"entry ({i}, {j}) = {rows[i][j]} but ({j}, {i}) = {rows[j][i]}")


def bareiss_rank(mat):
    """Rank over Q of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in np.asarray(mat, dtype=object).tolist()]
    if not a or not a[0]:
        return 0
    a = [[int(x) for x in r] for r in a]
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            arc = a[r][col]
            row = a[r]
            prow = a[rank]
            for c in range(col + 1, ncols):
                row[c] = (p * row[c] - arc * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_of_gram(mat):
    """Rank of a symmetric integer matrix."""
    rows = _as_int_rows(mat)
    _check_symmetric(rows)
    return bareiss_rank(rows)


def determinant(mat):
    """Exact determinant by Bareiss elimination with row swaps."""
    a = _as_int_rows(mat)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = p
    return sign * a[n - 1][n - 1]


def inertia(mat):
    """``(n_plus, n_minus, n_zero)`` of a symmetric rational matrix.

    Symmetric elimination by congruence: a nonzero diagonal pivot contributes
    its sign; when every remaining diagonal entry is zero but some
    off-diagonal ``a_ij`` is not, the 2x2 block on ``{i, j}`` is hyperbolic and
    contributes one of each sign.
    """
    a = [[Fraction(x) for x in r] for r in _as_int_rows(mat)]
    _check_symmetric(a)
    pos = neg = 0
    idx = list(range(len(a)))
    while idx:
        k = next((i for i in idx if a[i][i] != 0), None)
        if k is not None:
            p = a[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(k)
            col = [a[i][k] for i in range(len(a))]
            for i in idx:
                if col[i]:
                    f = col[i] / p
                    for j in idx:
                        a[i][j] -= f * col[j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        pos += 1
        neg += 1
        idx.remove(i)
        idx.remove(j)
        b = a[i][j]
        # inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        for r in idx:
            ri, rj = a[r][i], a[r][j]
            if not (ri or rj):
                continue
            for c in idx:
                a[r][c] -= (ri * a[j][c] + rj * a[i][c]) / b
    return pos, neg, len(a) - pos - neg


def signature(mat):
    pos, neg, _ = inertia(mat)
    return pos, neg


def is_even(mat):
    rows = _as_int_rows(mat)
    return all(rows[i][i] % 2 == 0 for i in range(len(rows)))


def gram_inverse():
    """Integer inverse of GRAM (it is unimodular)."""
    n = RANK
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(GRAM)]
    for k in range(n):
        piv = next(r for r in range(k, n) if a[r][k] != 0)
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for r in range(n):
            if r != k and a[r][k] != 0:
                f = a[r][k]
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    inv = np.array([[int(x) for x in row[n:]] for row in a], dtype=np.int64)
    inv.setflags(write=False)
    return inv


GRAM_INV = gram_inverse()


def isometry_inverse(m):
    """Inverse of a right-acting isometry: ``M^{-1} = G M^T G^{-1}``."""
    m = np.asarray(m, dtype=np.int64)
    inv = matmul(matmul(GRAM, m.T), GRAM_INV)
    inv.setflags(write=False)
    return inv
