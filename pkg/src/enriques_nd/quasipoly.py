"""Quasipolynomials ``a k^2 + b k + c + d (-1)^k`` over the rationals."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, isqrt

from .errors import NoFit, Unbounded


def _sign(k):
    return 1 if k % 2 == 0 else -1


@dataclass(frozen=True)
class QuasiPolynomial:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __call__(self, k):
        return self.a * k * k + self.b * k + self.c + self.d * _sign(k)

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        def coef(x, unit):
            if x == 1 and unit:
                return ""
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"

        parts = []
        for x, unit in ((self.a, "k^2"), (self.b, "k"), (self.d, "(-1)^k"), (self.c, "")):
            if x == 0:
                continue
            mag = abs(x)
            body = coef(mag, unit) + unit if unit else coef(mag, "")
            parts.append(("-" if x < 0 else "+", body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for s, body in parts[1:]:
            text += f" {s} {body}"
        return text


def _solve(rows, rhs):
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(y)] for r, y in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def fit_quasipolynomial(samples):
    """Interpolate through four samples, then demand every sample matches."""
    samples = sorted((int(k), Fraction(v)) for k, v in samples)
    ks = [k for k, _ in samples]
    if len(samples) < 6 or len(set(ks)) != len(ks):
        raise ValueError("need at least 6 samples at distinct k")
    if len({k % 2 for k in ks}) < 2:
        raise ValueError("samples must cover both parities of k")
    coeffs = None
    for chosen in combinations(samples, 4):
        if len({k % 2 for k, _ in chosen}) < 2:
            continue
        rows = [(k * k, k, 1, _sign(k)) for k, _ in chosen]
        coeffs = _solve(rows, [v for _, v in chosen])
        if coeffs is not None:
            break
    if coeffs is None:
        raise NoFit("no invertible interpolation system among the samples")
    p = QuasiPolynomial(*coeffs)
    for k, v in samples:
        if p(k) != v:
            raise NoFit(f"sample k={k} gives {v}, interpolant gives {p(k)}")
    return p


def _search_bound(p, target):
    # For |k| > B: a k^2 - |b||k| - (|c| + |d| + |target|) > 0, hence p(k) != target.
    a, b = p.a, abs(p.b)
    rest = abs(p.c) + abs(p.d) + abs(Fraction(target))
    disc = b * b + 4 * a * rest
    root_hi = (b + Fraction(isqrt(ceil(disc)) + 1)) / (2 * a)
    return 1 + ceil(root_hi)


def integer_solutions_equal(p, target):
    """All integers k with ``p(k) == target``, ascending."""
    target = Fraction(target)
    if p.a < 0:
        p = QuasiPolynomial(-p.a, -p.b, -p.c, -p.d)
        target = -target
    if p.a > 0:
        bound = _search_bound(p, target)
        return [k for k in range(-bound, bound + 1) if p(k) == target]
    if p.b != 0:
        sols = []
        for parity, s in ((0, 1), (1, -1)):
            k = (target - p.c - p.d * s) / p.b
            if k.denominator == 1 and k.numerator % 2 == parity:
                sols.append(k.numerator)
        return sorted(sols)
    for s in (1, -1):
        if p.c + p.d * s == target:
            raise Unbounded(f"{p} equals {target} for every k of one parity")
    return []
