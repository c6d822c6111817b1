"""Finite ordered systems of smooth rational curve classes."""
import numpy as np

from .errors import Duplicate, NegativePairing, NotMinusTwo
from .lattice import RANK, bareiss_rank, product_matrix, vector


class CurveSystem:
    """Ordered, validated list of (-2)-classes with their intersection matrix.

    Only the numerical invariants are checked: self-intersection -2,
    non-negative mutual intersections and no repeated class. Whether a vector
    really is the class of an irreducible curve is taken on trust.

    ``words`` optionally records, per curve, how it was obtained from a base
    curve by generator words (see :mod:`enriques_nd.action`).
    """

    __slots__ = ("vectors", "intersections", "labels", "words", "_index")

    def __init__(self, vectors, labels=None, words=None):
        rows = [vector(v) for v in vectors]
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), RANK)
        arr.setflags(write=False)
        n = len(rows)
        if labels is None:
            labels = [f"R{i}" for i in range(n)]
        labels = [str(x) for x in labels]
        if len(labels) != n:
            raise ValueError("labels and vectors differ in length")
        if len(set(labels)) != n:
            raise ValueError("labels must be unique")
        inter = np.asarray(product_matrix(arr)).astype(np.int64)
        for i in range(n):
            if inter[i, i] != -2:
                raise NotMinusTwo(i, int(inter[i, i]))
        seen = {}
        for i, row in enumerate(arr):
            key = row.tobytes()
            if key in seen:
                raise Duplicate(seen[key], i)
            seen[key] = i
        neg = np.argwhere(inter < 0)
        for i, j in neg:
            if i != j:
                raise NegativePairing(int(i), int(j), int(inter[i, j]))
        inter.setflags(write=False)
        self.vectors = arr
        self.intersections = inter
        self.labels = labels
        self.words = list(words) if words is not None else [None] * n
        self._index = {lab: i for i, lab in enumerate(labels)}

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, i):
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self):
        return f"CurveSystem({len(self)} curves)"

    def index(self, label):
        return self._index[label]

    def find(self, v):
        """Position of the class ``v`` in the system, or ``None``."""
        v = vector(v)
        hits = np.flatnonzero(np.all(self.vectors == v, axis=1))
        return int(hits[0]) if len(hits) else None

    def neighbours(self, i):
        row = self.intersections[i]
        return [j for j in range(len(self)) if j != i and row[j] > 0]

    def subsystem(self, indices):
        idx = list(indices)
        return CurveSystem(self.vectors[idx], [self.labels[i] for i in idx],
                           [self.words[i] for i in idx])


def build_system(vectors, labels=None):
    return CurveSystem(vectors, labels)


def spans_full_rank(system):
    if len(system) == 0:
        return False
    return bareiss_rank(system.vectors) == RANK
