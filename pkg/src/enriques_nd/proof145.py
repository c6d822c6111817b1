"""Replay of the argument that cnd = 4 for Enriques surface no. 145.

Everything is recomputed from the case snapshot (curves R0..R9 and the
generators ``eps``, ``gamma``): group relations, the parametric orbit of R8,
the fibration representatives, and every intersection number between orbit
translates. Each k-dependent identity is established by fitting
``a k^2 + b k + c + d (-1)^k`` on a window, checking it on a wider window,
and solving ``p(k) = target`` over all integers with an explicit bound.

The facts that come from geometry rather than lattice arithmetic (the list of
fibration types up to automorphisms, the description of all smooth rational
curves, every fibration having a fiber supported on them) are listed as
assumptions in the report and are not checked.
"""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .action import IDENTITY, apply_word
from .configs import configuration_from_terms
from .curves import CurveSystem
from .errors import EnriquesError, ProofStepFailed
from .lattice import dot, halve, is_two_divisible, validate_isometry, vector
from .quasipoly import QuasiPolynomial, fit_quasipolynomial, integer_solutions_equal
from .solver import verify_sequence

FIT_WINDOW = range(-6, 7)
CHECK_WINDOW = range(-20, 21)
H = Fraction(1, 2)
CONCLUSION = "cnd = 4, nd = 4 (equality per the listed assumption set)"

ASSUMPTIONS = (
    "Up to automorphisms the elliptic fibrations have types ~A7^HF, ~A1^F+~E7^F, ~D8^F, ~E8^F "
    "with the listed representatives (external classification of elliptic fibrations).",
    "Every smooth rational curve is R0..R9 or R8 moved by a power of gamma, and aut(Y) is "
    "generated by eps and gamma (external description of aut(Y) and its curve orbits).",
    "Every elliptic fibration has a fiber or half-fiber supported on smooth rational curves, "
    "so nd equals cnd (external classification).",
    "Geometric statements about the involutions (fixed curves, bielliptic maps) are not used.",
)

# Coordinates of R8 . gamma^k as quasipolynomials in k.
R8_ORBIT_FORM = (
    QuasiPolynomial(4, 4, 1, -1),
    QuasiPolynomial(2, 1, H, -H),
    QuasiPolynomial(4, 4, 2, -1),
    QuasiPolynomial(7, 7, 2, -2),
    QuasiPolynomial(6, 6, 3 * H, -3 * H),
    QuasiPolynomial(5, 5, 1, -1),
    QuasiPolynomial(4, 4, H, -H),
    QuasiPolynomial(3, 3, 0, 0),
    QuasiPolynomial(2, 2, 0, 0),
    QuasiPolynomial(1, 1, 0, 0),
)

# (multiplicity, curve index) combinations; halves are marked by HALF.
A7_TERMS = [(1, i) for i in (0, 2, 3, 4, 5, 6, 7, 9)]
# The R0/R3 coefficients here are the ones that give Kodaira multiplicities.
E7_TERMS = [(1, 0), (2, 2), (3, 3), (3, 5), (2, 6), (1, 7), (4, 4), (2, 1)]
DA_TERMS = [(1, 0), (1, 1), (1, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 9), (1, 8)]
DB_TERMS = [(2, 0), (1, 1), (2, 2), (2, 3), (2, 4), (1, 5), (1, 7), (2, 9), (1, 8)]
EA_TERMS = [(1, 1), (2, 4), (3, 5), (4, 6), (5, 7), (6, 9), (4, 0), (2, 2), (3, 8)]
EB_TERMS = [(2, 6), (4, 7), (6, 9), (5, 0), (4, 2), (3, 3), (2, 4), (1, 1), (3, 8)]
WITNESS_E7_TERMS = [(2, 2), (3, 0), (4, 9), (3, 7), (2, 6), (1, 5), (2, 8), (1, 3)]

# Curve permutations i -> j meaning R_i . g = R_j.
EPS_PERMUTATION = {2: 2, 6: 6, 0: 3, 3: 0, 1: 8, 8: 1, 4: 9, 9: 4, 5: 7, 7: 5}
GAMMA_PERMUTATION = {0: 5, 5: 0, 2: 6, 6: 2, 3: 7, 7: 3, 4: 9, 9: 4}


@dataclass
class Identity:
    name: str
    expected: str
    fitted: str
    target: object = None
    solutions: object = None
    expected_solutions: object = None
    holds: bool = False

    def as_dict(self):
        return {"name": self.name, "expected": self.expected, "fitted": self.fitted,
                "target": None if self.target is None else str(self.target),
                "solutions": self.solutions, "expected_solutions": self.expected_solutions,
                "holds": self.holds}


@dataclass
class Step:
    name: str
    passed: bool = False
    detail: str = ""
    identities: list = field(default_factory=list)

    def as_dict(self):
        return {"step": self.name, "passed": self.passed, "detail": self.detail,
                "identities": [i.as_dict() for i in self.identities]}


@dataclass
class ProofReport:
    steps: list = field(default_factory=list)
    assumptions: tuple = ASSUMPTIONS
    conclusion: str = ""

    @property
    def passed(self):
        return bool(self.steps) and all(s.passed for s in self.steps)

    def as_dict(self):
        return {"passed": self.passed, "conclusion": self.conclusion,
                "assumptions": list(self.assumptions),
                "steps": [s.as_dict() for s in self.steps]}


STEP_NAMES = (
    "isometries", "relations", "curve-action", "r8-orbit", "a7-invariance",
    "a1e7-representative", "d8-orthogonality", "e8-orthogonality", "stabilisers",
    "orbit-distinctness", "same-type-maxima", "a7-e8-products", "type-combinations",
    "e8-d8-uniqueness", "witness",
)


class _Replay:
    def __init__(self, case, overrides):
        self.R = [vector(v) for v in case.system.vectors]
        if len(self.R) < 10:
            raise ProofStepFailed("isometries", "snapshot has fewer than ten curves")
        self.gens = case.gens
        self.report = ProofReport()
        self.overrides = {k: vector(v) for k, v in (overrides or {}).items()}

    # -- helpers
    def act(self, v, *word):
        return apply_word(v, word, self.gens)

    def gamma_k(self, v, k):
        return self.act(v, ("gamma", k)) if k else vector(v)

    def combo(self, terms):
        return vector(sum(m * self.R[i].astype(np.int64) for m, i in terms))

    def half(self, name, terms):
        if name in self.overrides:
            return self.overrides[name]
        return halve(self.combo(terms))

    def fit(self, name, func, expected, target=None, expected_solutions=None):
        samples = [(k, func(k)) for k in FIT_WINDOW]
        ident = Identity(name, str(expected), "")
        try:
            p = fit_quasipolynomial(samples)
        except EnriquesError as exc:
            ident.fitted = f"no fit: {exc}"
            return ident, None
        ident.fitted = str(p)
        fresh_ok = all(p(k) == func(k) for k in CHECK_WINDOW if k not in FIT_WINDOW)
        ident.holds = fresh_ok and p == expected
        if target is not None:
            ident.target = target
            sols = integer_solutions_equal(p, target)
            ident.solutions = sols
            ident.expected_solutions = expected_solutions
            ident.holds = ident.holds and sols == expected_solutions
        return ident, p

    def step(self, name):
        s = Step(name)
        self.report.steps.append(s)
        return s

    def finish(self, s, ok, detail=""):
        s.passed = bool(ok)
        s.detail = detail
        if not s.passed:
            raise ProofStepFailed(s.name, detail or "identity check failed")

    # -- steps
    def run(self):
        R = self.R
        g = self.gens

        s = self.step("isometries")
        try:
            validate_isometry(g["eps"])
            validate_isometry(g["gamma"])
        except EnriquesError as exc:
            self.finish(s, False, str(exc))
        self.finish(s, True, "eps and gamma preserve the E10 form")

        s = self.step("relations")
        eps2 = g.word_matrix([("eps", 2)])
        lhs = g.word_matrix([("eps", 1), ("gamma", 1)])
        rhs = g.word_matrix([("gamma", -1), ("eps", 1)])
        finite = [k for k in range(1, 21) if np.array_equal(g.power("gamma", k), IDENTITY)]
        ok = np.array_equal(eps2, IDENTITY) and np.array_equal(lhs, rhs) and not finite
        self.finish(s, ok, "eps^2 = I, eps gamma = gamma^-1 eps, gamma^k != I for 1 <= k <= 20"
                    if ok else f"eps^2=I: {np.array_equal(eps2, IDENTITY)}, "
                               f"eps gamma = gamma^-1 eps: {np.array_equal(lhs, rhs)}, "
                               f"gamma^k = I for k in {finite}")

        s = self.step("curve-action")
        bad = [f"R{i}.eps" for i, j in EPS_PERMUTATION.items()
               if not np.array_equal(self.act(R[i], ("eps", 1)), R[j])]
        bad += [f"R{i}.gamma" for i, j in GAMMA_PERMUTATION.items()
                if not np.array_equal(self.act(R[i], ("gamma", 1)), R[j])]
        if not np.array_equal(self.gamma_k(R[8], -1), R[1]):
            bad.append("R8.gamma^-1 != R1")
        self.finish(s, not bad, "eps and gamma permute R0..R9 as stated; R8.gamma^-1 = R1"
                    if not bad else "mismatch: " + ", ".join(bad))

        s = self.step("r8-orbit")
        orbit = {k: self.gamma_k(R[8], k) for k in CHECK_WINDOW}
        bad = [k for k, v in orbit.items()
               if any(Fraction(int(v[c])) != R8_ORBIT_FORM[c](k) for c in range(10))]
        keys = {v.tobytes() for v in orbit.values()}
        collide = [k for k, v in orbit.items() if k not in (-1, 0)
                   and any(np.array_equal(v, r) for r in R)]
        ok = not bad and len(keys) == len(orbit) and not collide
        self.finish(s, ok, f"R8.gamma^k matches the closed form and is new for k in [-20, 20]"
                    if ok else f"closed form fails at {bad[:5]}, distinct={len(keys) == len(orbit)}, "
                               f"hits R0..R9 at {collide[:5]}")

        a7 = self.combo(A7_TERMS)
        s = self.step("a7-invariance")
        ok = (np.array_equal(self.act(a7, ("eps", 1)), a7)
              and np.array_equal(self.act(a7, ("gamma", 1)), a7))
        cfg, good, why = self._config(A7_TERMS)
        ok = ok and good and str(cfg.dynkin_type) == "~A7" and not is_two_divisible(a7)
        self.finish(s, ok, "~A7 half-fiber is fixed by eps and gamma" if ok else why or "not invariant")

        s = self.step("a1e7-representative")
        r8m2 = self.gamma_k(R[8], -2)
        pair = CurveSystem([R[8], r8m2], ["R8", "R8.gamma^-2"])
        cfg_a, good_a, why_a = configuration_from_terms(pair, [(1, 0), (1, 1)])
        a_cls = self.half("A", []) if "A" in self.overrides else halve(
            vector(R[8].astype(np.int64) + r8m2))
        cfg_e, good_e, why_e = self._config(E7_TERMS)
        e7_half = halve(self.combo(E7_TERMS))
        ok = (good_a and str(cfg_a.dynkin_type) == "~A1" and good_e
              and str(cfg_e.dynkin_type) == "~E7" and np.array_equal(a_cls, e7_half)
              and dot(a_cls, a_cls) == 0)
        self.finish(s, ok, "A = 1/2(R8 + R8.gamma^-2) equals the half ~E7 fiber of the same fibration"
                    if ok else (why_a or why_e or "A differs from the half ~E7 class"))
        self.A = a_cls

        s = self.step("d8-orthogonality")
        self.Da = self._representative(s, "D_a", DA_TERMS, "~D8")
        self.Db = self._representative(s, "D_b", DB_TERMS, "~D8")
        self.finish(s, True, "2 D_a and 2 D_b are ~D8 fibers orthogonal to their components")

        s = self.step("e8-orthogonality")
        self.Ea = self._representative(s, "E_a", EA_TERMS, "~E8")
        self.Eb = self._representative(s, "E_b", EB_TERMS, "~E8")
        self.finish(s, True, "2 E_a and 2 E_b are ~E8 fibers orthogonal to their components")

        Da, Db, Ea, Eb, A = self.Da, self.Db, self.Ea, self.Eb, self.A
        eps = ("eps", 1)
        s = self.step("stabilisers")
        checks = {
            "D_a.eps = D_a": np.array_equal(self.act(Da, eps), Da),
            "D_b.eps = D_b": np.array_equal(self.act(Db, eps), Db),
            "A.(eps gamma^-1) = A": np.array_equal(self.act(A, eps, ("gamma", -1)), A),
            "E_a.eps != E_a": not np.array_equal(self.act(Ea, eps), Ea),
            "E_b.eps != E_b": not np.array_equal(self.act(Eb, eps), Eb),
        }
        bad = [k for k, v in checks.items() if not v]
        self.finish(s, not bad, "; ".join(checks) if not bad else "fails: " + "; ".join(bad))

        Ea_eps = self.act(Ea, eps)
        Eb_eps = self.act(Eb, eps)
        gk = self.gamma_k
        P = QuasiPolynomial

        s = self.step("orbit-distinctness")
        self._identities(s, [
            ("D_a.D_b,k", lambda k: dot(Da, gk(Db, k)), P(1, 0, H, H), 0, []),
            ("E_a.E_b,k", lambda k: dot(Ea, gk(Eb, k)), P(4, 0, 3, 0), 0, []),
            ("E_a.E_b,eps,k", lambda k: dot(Ea, gk(Eb_eps, k)), P(4, -4, 3, 2), 0, []),
        ], "the two ~D8 and the two ~E8 representatives lie in different orbits")

        s = self.step("same-type-maxima")
        self._identities(s, [
            ("A_0.A_k", lambda k: dot(A, gk(A, k)), P(1, 0, H, -H), 1, []),
            ("D_a.D_a,k", lambda k: dot(Da, gk(Da, k)), P(1, 0, H, -H), 1, []),
            ("D_b.D_b,k", lambda k: dot(Db, gk(Db, k)), P(1, 0, H, -H), 1, []),
            ("D_a.D_b,k", lambda k: dot(Da, gk(Db, k)), P(1, 0, H, H), 1, [-1, 0, 1]),
            ("E_a.E_a,k", lambda k: dot(Ea, gk(Ea, k)), P(4, 0, 2, -2), 1, []),
            ("E_a.E_a,eps,k", lambda k: dot(Ea, gk(Ea_eps, k)), P(4, -4, 4, 0), 1, []),
            ("E_b.E_b,k", lambda k: dot(Eb, gk(Eb, k)), P(4, 0, 2, -2), 1, []),
            ("E_b.E_b,eps,k", lambda k: dot(Eb, gk(Eb_eps, k)), P(4, -4, 4, 0), 1, []),
            ("E_a.E_b,k", lambda k: dot(Ea, gk(Eb, k)), P(4, 0, 3, 0), 1, []),
            ("E_a.E_b,eps,k", lambda k: dot(Ea, gk(Eb_eps, k)), P(4, -4, 3, 2), 1, [1]),
        ], "")
        # One class per orbit at most when self-products never reach 1.
        maxima = {"~A7^HF": 1, "~A1^F+~E7^F": 1, "~D8^F": 2, "~E8^F": 2}
        s.detail = "maxima per type: " + ", ".join(f"{t}: {m}" for t, m in maxima.items())

        s = self.step("a7-e8-products")
        self._identities(s, [
            ("A7.E_a,k", lambda k: dot(a7, gk(Ea, k)), P(0, 0, 2, 0), None, None),
            ("A7.E_a,eps,k", lambda k: dot(a7, gk(Ea_eps, k)), P(0, 0, 2, 0), None, None),
            ("A7.E_b,k", lambda k: dot(a7, gk(Eb, k)), P(0, 0, 2, 0), None, None),
            ("A7.E_b,eps,k", lambda k: dot(a7, gk(Eb_eps, k)), P(0, 0, 2, 0), None, None),
        ], "the ~A7 half-fiber meets every ~E8 half-fiber with product 2")

        s = self.step("type-combinations")
        types = list(maxima)
        combos = []
        for combo in combinations_with_replacement(types, 5):
            cnt = Counter(combo)
            if all(cnt[t] <= maxima[t] for t in cnt):
                combos.append(cnt)
        allowed = [c for c in combos if not (c["~A7^HF"] and c["~E8^F"])]
        expected = Counter({"~A1^F+~E7^F": 1, "~D8^F": 2, "~E8^F": 2})
        ok = len(combos) == 4 and allowed == [expected]
        self.finish(s, ok, f"{len(combos)} type combinations of length 5 respect the maxima; "
                           f"only {_fmt_counter(allowed[0]) if allowed else 'none'} avoids ~A7 with ~E8"
                    if ok else f"unexpected combinations {[_fmt_counter(c) for c in allowed]}")

        s = self.step("e8-d8-uniqueness")
        ok = self._identities(s, [
            ("E_a.D_a,k", lambda k: dot(Ea, gk(Da, k)), P(2, -1, 3 * H, -H), 1, [0]),
            ("E_a.D_b,k", lambda k: dot(Ea, gk(Db, k)), P(2, -1, 3 * H, H), 1, []),
        ], None, final=False)
        eb_terms = []
        for name, rep in (("E_b.D_a,k", Da), ("E_b.D_b,k", Db)):
            ident, p = self.fit(name, lambda k, rep=rep: dot(Eb, gk(rep, k)), "(computed)")
            if p is not None:
                ident.expected = str(p)
                ident.target = 1
                ident.solutions = integer_solutions_equal(p, 1)
                ident.holds = all(p(k) == dot(Eb, gk(rep, k)) for k in CHECK_WINDOW)
                eb_terms.extend(ident.solutions)
            s.identities.append(ident)
        eb_ok = all(i.holds for i in s.identities[2:]) and len(eb_terms) <= 1
        self.finish(s, ok and eb_ok,
                    "each ~E8 representative meets exactly one ~D8 half-fiber with product 1, "
                    "so two ~D8 classes cannot both join it"
                    if ok and eb_ok else "a ~E8 representative meets two ~D8 half-fibers with product 1")

        s = self.step("witness")
        e7w = halve(self.combo(WITNESS_E7_TERMS))
        seq = [a7, Da, Db, e7w]
        rep = verify_sequence(seq)
        cfg, good, why = self._config(WITNESS_E7_TERMS)
        ok = rep.passed and good and str(cfg.dynkin_type) == "~E7"
        self.finish(s, ok, "A7, D_a, D_b and the half ~E7 fiber form an isotropic sequence of length 4"
                    if ok else why or "witness products are not 1 - I")

        self.report.conclusion = CONCLUSION
        return self.report

    def _config(self, terms):
        sys10 = CurveSystem(self.R[:10], [f"R{i}" for i in range(10)])
        return configuration_from_terms(sys10, terms)

    def _representative(self, s, name, terms, dynkin):
        cls = self.half(name, terms)
        fiber = 2 * cls.astype(np.int64)
        cfg, good, why = self._config(terms)
        support = sorted({i for _, i in terms})
        orth = [i for i in support if dot(fiber, self.R[i]) != 0]
        problems = []
        if orth:
            problems.append(f"{name} not orthogonal to " + ", ".join(f"R{i}" for i in orth))
        if dot(cls, cls) != 0:
            problems.append(f"{name} has square {dot(cls, cls)}")
        if not np.array_equal(fiber, self.combo(terms)):
            problems.append(f"{name} differs from half its configuration")
        if not good or str(cfg.dynkin_type) != dynkin:
            problems.append(f"{name}: {why or 'type ' + str(cfg.dynkin_type)}")
        if is_two_divisible(cls):
            problems.append(f"{name} is 2-divisible")
        if problems:
            s.detail = "; ".join(problems)
            self.finish(s, False, s.detail)
        return cls

    def _identities(self, s, items, detail, final=True):
        for name, func, expected, target, sols in items:
            ident, _ = self.fit(name, func, expected, target, sols)
            s.identities.append(ident)
        ok = all(i.holds for i in s.identities)
        if final:
            bad = [i.name for i in s.identities if not i.holds]
            self.finish(s, ok, detail if ok else "identities fail: " + ", ".join(bad))
        return ok


def _fmt_counter(c):
    return ", ".join(f"{n}x({t})" if n > 1 else f"({t})" for t, n in c.items())


def case145_exclusion_proof(case=None, overrides=None):
    """Run every step; raise :class:`ProofStepFailed` at the first failure.

    ``overrides`` maps a representative name (``"A"``, ``"D_a"``, ``"D_b"``,
    ``"E_a"``, ``"E_b"``) to a replacement class, for fault injection.
    The partial report is attached to the exception as ``.report``.
    """
    if case is None:
        from .data_io import bundled_case
        case = bundled_case(145)
    replay = _Replay(case, overrides)
    try:
        return replay.run()
    except ProofStepFailed as exc:
        exc.report = replay.report
        raise
