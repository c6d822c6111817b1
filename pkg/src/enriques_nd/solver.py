"""Longest isotropic sequences f_1..f_m with f_i . f_j = 1 - delta_ij."""
from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation, NotIsotropic
from .halffibers import HalfFiberClass
from .kernels import max_clique
from .lattice import RationalClass, is_two_divisible, product_matrix, vector

MAX_LENGTH = 10


@dataclass(frozen=True)
class IsotropicSequence:
    members: tuple      # HalfFiberClass (or raw class tuples)
    indices: tuple      # positions in the solver input

    @property
    def length(self):
        return len(self.members)


@dataclass
class SequenceReport:
    integral: list
    indivisible: list
    products: list = field(default_factory=list)
    matches: bool = False

    @property
    def passed(self):
        return all(self.integral) and all(self.indivisible) and self.matches

    @property
    def m(self):
        return len(self.integral)


def _coords(item):
    if isinstance(item, HalfFiberClass):
        return item.klass
    return item


def compatibility_graph(classes):
    """Product matrix and adjacency (product exactly 1) of isotropic classes."""
    rows = np.array([vector(_coords(c)) for c in classes], dtype=np.int64).reshape(len(classes), 10)
    prod = np.asarray(product_matrix(rows))
    for i in range(len(classes)):
        if prod[i, i] != 0:
            raise NotIsotropic(i, int(prod[i, i]))
    adj = prod == 1
    np.fill_diagonal(adj, False)
    return prod, adj


def compute_cnd(hf, cap=MAX_LENGTH, backend=None):
    """Maximum clique of the compatibility graph and its lexicographically
    first witness (indices in input order)."""
    hf = list(hf)
    if not hf:
        return 0, IsotropicSequence((), ())
    _, adj = compatibility_graph(hf)
    idx = tuple(int(i) for i in max_clique(adj, cap, backend=backend))
    seq = IsotropicSequence(tuple(hf[i] for i in idx), idx)
    report = verify_sequence(seq.members)
    if not report.passed:
        raise InvariantViolation("solver witness failed verification")
    return len(idx), seq


def verify_sequence(members):
    """Standalone check of ``F M F^T == 1_m - I_m``.

    Members may be :class:`RationalClass`, :class:`HalfFiberClass` or plain
    integer coordinate sequences. Failures are reported, not raised.
    """
    integral, indivisible, rows = [], [], []
    for item in members:
        if isinstance(item, RationalClass):
            ok = item.is_integral
            num = item.numerator
            integral.append(ok)
            indivisible.append(ok and not is_two_divisible(num))
            rows.append(num if ok else None)
        else:
            v = vector(_coords(item))
            integral.append(True)
            indivisible.append(not is_two_divisible(v))
            rows.append(v)
    report = SequenceReport(integral, indivisible)
    if not all(integral):
        return report
    m = len(rows)
    arr = np.array(rows, dtype=np.int64).reshape(m, 10)
    prod = np.asarray(product_matrix(arr)).astype(np.int64)
    target = np.ones((m, m), dtype=np.int64) - np.eye(m, dtype=np.int64)
    report.products = prod.tolist()
    report.matches = bool(np.array_equal(prod, target))
    return report
