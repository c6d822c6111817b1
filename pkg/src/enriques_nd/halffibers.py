"""Candidate half-fiber classes HF(Y, R) from elliptic configurations."""
from dataclasses import dataclass

from .configs import EllipticConfiguration, enumerate_configurations
from .errors import DoubleDivisible
from .lattice import halve, is_two_divisible, vector

FIBER = "F"
HALF_FIBER = "HF"


@dataclass(frozen=True)
class HalfFiberClass:
    klass: tuple
    kind: str                       # FIBER: configuration halved; HALF_FIBER: taken as is
    source: EllipticConfiguration

    @property
    def type_label(self):
        return f"{self.source.dynkin_type}^{self.kind}"

    def notation(self, labels):
        """Combination of curves in the ``1/2(R0 + 2R7)`` style."""
        terms = []
        for i, m in zip(self.source.support, self.source.multiplicities):
            terms.append(f"{m if m > 1 else ''}{labels[i]}")
        body = "(" + " + ".join(terms) + ")"
        return ("1/2" + body) if self.kind == FIBER else body


def classify(config):
    """Halve 2-divisible configuration classes (fibers); keep the rest."""
    klass = vector(config.klass)
    if is_two_divisible(klass):
        half = halve(klass)
        if is_two_divisible(half):
            raise DoubleDivisible(f"configuration {config} has a 4-divisible class")
        return HalfFiberClass(tuple(int(x) for x in half), FIBER, config)
    return HalfFiberClass(tuple(int(x) for x in klass), HALF_FIBER, config)


def hf_from_configurations(configs):
    out = []
    seen = set()
    for cfg in sorted(configs, key=lambda c: c.support):
        hf = classify(cfg)
        if hf.klass in seen:
            continue
        seen.add(hf.klass)
        out.append(hf)
    return out


def build_hf_set(system, max_support=10, prune=True):
    """Deduplicated half-fiber classes, first source kept, ordered by support."""
    return hf_from_configurations(enumerate_configurations(system, max_support, prune))
