"""Elliptic configurations supported on a curve system.

A subset S of curves is an elliptic configuration when the intersection
matrix restricted to S is negative semidefinite with a one-dimensional kernel
spanned by a strictly positive vector. That vector, made primitive, gives the
Kodaira multiplicities. The Dynkin label is derived separately from the dual
graph and cross-checked against the table of affine marks.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from .errors import Inconsistent
from .kernels import psd_corank

MAX_SUPPORT = 10

# Sorted affine marks per type family.
def affine_marks(family, n):
    if family == "A":
        return (1,) * (n + 1)
    if family == "D":
        return (1, 1, 1, 1) + (2,) * (n - 3)
    return {6: (1, 1, 1, 2, 2, 2, 3),
            7: (1, 1, 2, 2, 2, 3, 3, 4),
            8: (1, 2, 2, 3, 3, 4, 4, 5, 6)}[n]


@dataclass(frozen=True)
class DynkinType:
    family: str  # "A", "D" or "E"
    rank: int

    def __str__(self):
        return f"~{self.family}{self.rank}"

    @property
    def unicode(self):
        subs = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        return f"{self.family}̃{str(self.rank).translate(subs)}"

    @classmethod
    def parse(cls, text):
        t = text.lstrip("~")
        return cls(t[0], int(t[1:]))


@dataclass(frozen=True)
class EllipticConfiguration:
    support: tuple          # sorted curve indices
    multiplicities: tuple   # aligned with support
    klass: tuple            # sum of mult * curve, 10 ints
    dynkin_type: DynkinType

    def __str__(self):
        return f"{self.dynkin_type}{list(zip(self.support, self.multiplicities))}"


def kernel_vector(block):
    """Primitive integer generator of the kernel of a corank-1 integer
    matrix, normalised to have positive sum; ``None`` if the kernel is not
    one-dimensional."""
    a = [[Fraction(int(x)) for x in row] for row in block]
    n = len(a)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * n
    vec[f] = Fraction(1)
    for row, c in enumerate(pivots):
        vec[c] = -a[row][f]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if sum(ints) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _components(adj_block):
    n = len(adj_block)
    seen = [False] * n
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            for v in range(n):
                if not seen[v] and u != v and adj_block[u][v] > 0:
                    seen[v] = True
                    stack.append(v)
    return comps


def structural_type(block):
    """Affine Dynkin label read off the dual graph of the support.

    ``block`` is the restricted intersection matrix (diagonal -2).
    """
    n = len(block)
    edges = sum(int(block[i][j]) for i in range(n) for j in range(i + 1, n))
    if n < 2 or _components(block) != 1:
        raise Inconsistent("support is not a connected graph on >= 2 vertices")
    if edges >= n:
        # a cycle (including the double edge of ~A1)
        return DynkinType("A", n - 1)
    if any(block[i][j] > 1 for i in range(n) for j in range(i + 1, n)):
        raise Inconsistent("tree with a multiple edge")
    deg = [sum(1 for j in range(n) if j != i and block[i][j] > 0) for i in range(n)]
    branch = [i for i in range(n) if deg[i] >= 3]
    if len(branch) == 2 and all(deg[i] == 3 for i in branch):
        return DynkinType("D", n - 1)
    if len(branch) == 1 and deg[branch[0]] == 4 and n == 5:
        return DynkinType("D", 4)
    if len(branch) == 1 and deg[branch[0]] == 3:
        centre = branch[0]
        arms = []
        for start in (j for j in range(n) if j != centre and block[centre][j] > 0):
            length, prev, cur = 1, centre, start
            while True:
                nxt = [j for j in range(n) if j not in (prev, cur) and block[cur][j] > 0]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms = tuple(sorted(arms))
        table = {(2, 2, 2): 6, (1, 3, 3): 7, (1, 2, 5): 8}
        if arms in table:
            return DynkinType("E", table[arms])
    raise Inconsistent(f"dual graph is not an affine Dynkin diagram (degrees {sorted(deg)})")


def label_type(block, multiplicities):
    """Structural label, checked against the affine marks table."""
    t = structural_type(block)
    if tuple(sorted(multiplicities)) != affine_marks(t.family, t.rank):
        raise Inconsistent(f"multiplicities {tuple(multiplicities)} do not match {t}")
    return t


def restricted(system, support):
    idx = list(support)
    return system.intersections[np.ix_(idx, idx)]


def analyse_support(system, support):
    """Return the configuration carried by ``support`` or ``None``."""
    support = tuple(sorted(support))
    if len(support) < 2:
        return None
    block = restricted(system, support)
    if psd_corank(-block) != 1:
        return None
    mult = kernel_vector(block)
    if mult is None or min(mult) <= 0:
        return None
    if _components(block) != 1:
        return None
    t = label_type(block, mult)
    klass = tuple(int(x) for x in np.asarray(mult, dtype=np.int64) @ system.vectors[list(support)])
    return EllipticConfiguration(support, mult, klass, t)


def configuration_from_terms(system, terms):
    """Validate an explicit combination ``[(mult, index), ...]``.

    Returns ``(config, ok, reason)`` where ``ok`` says whether the given
    coefficients are exactly the Kodaira multiplicities of the support.
    """
    coeff = {}
    for m, i in terms:
        coeff[i] = coeff.get(i, 0) + int(m)
    support = tuple(sorted(coeff))
    if len(support) < 2:
        return None, False, "support has fewer than two curves"
    block = restricted(system, support)
    corank = psd_corank(-block)
    if corank < 0:
        return None, False, "intersection matrix of the support is not negative semidefinite"
    if corank != 1:
        return None, False, f"support has corank {corank}, expected 1"
    if _components(block) != 1:
        return None, False, "support is disconnected"
    mult = kernel_vector(block)
    if mult is None or min(mult) <= 0:
        return None, False, "kernel vector is not strictly positive"
    try:
        t = label_type(block, mult)
    except Inconsistent as exc:
        return None, False, str(exc)
    klass = tuple(int(x) for x in np.asarray(mult, dtype=np.int64) @ system.vectors[list(support)])
    cfg = EllipticConfiguration(support, mult, klass, t)
    given = tuple(coeff[i] for i in support)
    if given != mult:
        return cfg, False, f"coefficients {given} differ from Kodaira multiplicities {mult}"
    return cfg, True, ""


def enumerate_configurations(system, max_support=MAX_SUPPORT, prune=True):
    """Every elliptic configuration supported on ``system``, sorted by support.

    Connected supports are grown one vertex at a time, each connected set
    visited once (extension-set enumeration rooted at its smallest vertex).
    With ``prune`` a set whose matrix already has a positive eigenvalue is not
    extended: by eigenvalue interlacing no superset can be semidefinite.
    """
    if not 2 <= max_support <= MAX_SUPPORT:
        raise ValueError("max_support must lie in [2, 10]")
    n = len(system)
    inter = system.intersections
    nbrs = [set(system.neighbours(i)) for i in range(n)]
    found = []

    def extend(sub, sub_nbrs, ext, root):
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_sub = sub + (w,)
            if prune:
                corank = psd_corank(-inter[np.ix_(new_sub, new_sub)])
                if corank < 0:
                    continue
                cfg = analyse_support(system, new_sub) if corank == 1 else None
            else:
                cfg = analyse_support(system, new_sub)
            if cfg is not None:
                found.append(cfg)
            if len(new_sub) < max_support:
                excl = {u for u in nbrs[w] if u > root and u not in sub_nbrs and u not in sub}
                extend(new_sub, sub_nbrs | nbrs[w] | {w}, ext + sorted(excl), root)

    for v in range(n):
        start = (v,)
        ext = sorted(u for u in nbrs[v] if u > v)
        extend(start, nbrs[v] | {v}, ext, v)
    found.sort(key=lambda c: c.support)
    return found


def brute_force_configurations(system, max_support=MAX_SUPPORT):
    """Reference scan over every vertex subset; no pruning, no growth order."""
    n = len(system)
    out = []
    for size in range(2, min(max_support, n) + 1):
        for sub in combinations(range(n), size):
            block = restricted(system, sub)
            if _components(block) != 1:
                continue
            cfg = analyse_support(system, sub)
            if cfg is not None:
                out.append(cfg)
    out.sort(key=lambda c: c.support)
    return out
