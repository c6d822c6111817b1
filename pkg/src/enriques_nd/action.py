"""Right action of isometry words on classes and orbit expansion."""
from dataclasses import dataclass, field

import numpy as np

from .curves import CurveSystem
from .errors import InvariantViolation, UnknownGenerator
from .lattice import RANK, isometry_inverse, matmul, product_matrix, validate_isometry, vector

IDENTITY = np.eye(RANK, dtype=np.int64)
IDENTITY.setflags(write=False)


def normalise_word(word):
    """Merge adjacent powers of the same generator and drop zero exponents."""
    out = []
    for name, exp in word:
        exp = int(exp)
        if out and out[-1][0] == name:
            exp += out[-1][1]
            out.pop()
        if exp:
            out.append((str(name), exp))
    return tuple(out)


def word_label(word):
    parts = []
    for name, exp in word:
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "·".join(parts)


@dataclass(frozen=True)
class OrbitWord:
    """Curve ``base`` moved by ``word``, applied left to right."""
    base: int
    word: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "word", normalise_word(self.word))

    def label(self, base_label=None):
        head = base_label if base_label is not None else f"R{self.base}"
        return "·".join([head, word_label(self.word)]) if self.word else head


class GeneratorSet:
    """Named isometries with cached inverses and powers."""

    def __init__(self, generators=None):
        self._mats = {}
        self._inv = {}
        self._pow = {}
        for name, mat in (generators or {}).items():
            self.add(name, mat)

    def add(self, name, mat):
        m = validate_isometry(mat)
        inv = isometry_inverse(m)
        if not np.array_equal(matmul(m, inv), IDENTITY):
            raise InvariantViolation(f"inverse of {name} is not integral")
        self._mats[name] = m
        self._inv[name] = inv
        self._pow = {k: v for k, v in self._pow.items() if k[0] != name}

    @property
    def names(self):
        return sorted(self._mats)

    def __contains__(self, name):
        return name in self._mats

    def __len__(self):
        return len(self._mats)

    def __getitem__(self, name):
        try:
            return self._mats[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def inverse(self, name):
        self[name]
        return self._inv[name]

    def is_involution(self, name):
        return np.array_equal(self[name], self._inv[name])

    def power(self, name, exp):
        exp = int(exp)
        key = (name, exp)
        if key in self._pow:
            return self._pow[key]
        if exp == 0:
            return IDENTITY
        base = self[name] if exp > 0 else self.inverse(name)
        result = IDENTITY
        sq = base
        e = abs(exp)
        while e:
            if e & 1:
                result = matmul(result, sq)
            e >>= 1
            if e:
                sq = matmul(sq, sq)
        result.setflags(write=False)
        self._pow[key] = result
        return result

    def word_matrix(self, word):
        m = IDENTITY
        for name, exp in normalise_word(word):
            m = matmul(m, self.power(name, exp))
        return m

    def as_dict(self):
        return dict(self._mats)


def apply_word(v, word, gens):
    """``v`` right-multiplied by each generator power of ``word`` in turn."""
    if isinstance(word, OrbitWord):
        word = word.word
    out = vector(v)
    for name, exp in normalise_word(word):
        out = vector(matmul(out, gens.power(name, exp)))
    return out


def check_relations(gens, relations):
    """Evaluate each ``(lhs_word, rhs_word)`` pair as matrices."""
    report = []
    for lhs, rhs in relations:
        left = gens.word_matrix(lhs)
        right = gens.word_matrix(rhs)
        report.append({
            "lhs": word_label(normalise_word(lhs)) or "I",
            "rhs": word_label(normalise_word(rhs)) or "I",
            "equal": bool(np.array_equal(left, right)),
        })
    return report


def _steps(gens):
    steps = []
    for name in gens.names:
        steps.append((name, 1))
        if not gens.is_involution(name):
            steps.append((name, -1))
    return steps


def expand_orbit(system, gens, radius):
    """Close ``system`` under generator words of length at most ``radius``.

    Original curves keep their positions; new curves follow in order of word
    length, then base index, then word. Each new class is labelled by the
    first (shortest, lexicographically least) word reaching it. Any image that
    is not a (-2)-class meeting every other curve non-negatively means the
    generators are not automorphisms of the curve data.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    vectors = [np.asarray(v) for v in system.vectors]
    labels = list(system.labels)
    words = [w if w is not None else OrbitWord(i) for i, w in enumerate(system.words)]
    seen = {v.tobytes(): i for i, v in enumerate(vectors)}
    frontier = list(range(len(vectors)))
    steps = _steps(gens)
    for _ in range(radius):
        found = []
        for i in frontier:
            for name, exp in steps:
                img = vector(matmul(vectors[i], gens.power(name, exp)))
                w = OrbitWord(words[i].base, words[i].word + ((name, exp),))
                found.append((w.base, w.word, img))
        found.sort(key=lambda t: (t[0], t[1]))
        frontier = []
        for base, word, img in found:
            key = img.tobytes()
            if key in seen:
                continue
            w = OrbitWord(base, word)
            seen[key] = len(vectors)
            frontier.append(len(vectors))
            vectors.append(img)
            labels.append(w.label(_base_label(system, base)))
            words.append(w)
        if not frontier:
            break
    arr = np.array(vectors, dtype=np.int64).reshape(len(vectors), RANK)
    inter = np.asarray(product_matrix(arr))
    bad_sq = [i for i in range(len(arr)) if inter[i, i] != -2]
    if bad_sq:
        raise InvariantViolation(f"orbit image {labels[bad_sq[0]]} is not a (-2)-class")
    off = inter.copy()
    np.fill_diagonal(off, 0)
    neg = np.argwhere(off < 0)
    if len(neg):
        i, j = (int(x) for x in neg[0])
        raise InvariantViolation(f"orbit images {labels[i]} and {labels[j]} meet negatively")
    return CurveSystem(arr, _unique_labels(labels), words)


def _base_label(system, base):
    return system.labels[base] if base < len(system) else f"R{base}"


def _unique_labels(labels):
    seen = {}
    out = []
    for lab in labels:
        if lab in seen:
            seen[lab] += 1
            lab = f"{lab}#{seen[lab]}"
        else:
            seen[lab] = 0
        out.append(lab)
    return out
