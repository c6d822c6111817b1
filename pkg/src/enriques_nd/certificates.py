"""Certificates: explicit isotropic sequences with a claimed bound, and their
verification.

A certificate entry is ``(1/den) * sum(mult * curve)`` where each curve is a
base curve moved by a generator word. An entry passes when its class is
integral and not 2-divisible, ``den * entry`` is an elliptic configuration
whose coefficients are the Kodaira multiplicities, and all entries together
satisfy ``F M F^T = 1_m - I_m``.
"""
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .action import apply_word, OrbitWord
from .configs import configuration_from_terms
from .curves import CurveSystem
from .errors import CurveSystemError, EnriquesError, UnknownGenerator, UnresolvableCurve
from .lattice import is_two_divisible, product_matrix, vector


@dataclass(frozen=True)
class CertificateEntry:
    denominator: int
    terms: tuple        # ((mult, OrbitWord), ...)

    def notation(self):
        body = " + ".join(f"{m if m > 1 else ''}{w.label()}" for m, w in self.terms)
        return f"1/2({body})" if self.denominator == 2 else f"({body})"


@dataclass(frozen=True)
class Certificate:
    case_id: int
    claimed_bound: int
    equality_claimed: bool
    members: tuple
    invariant: str = "nd"

    @property
    def claim(self):
        rel = "=" if self.equality_claimed else ">="
        return f"{self.invariant}(Y{self.case_id}) {rel} {self.claimed_bound}"


@dataclass
class EntryReport:
    notation: str
    coords: list = None
    integral: bool = False
    indivisible: bool = False
    configuration_ok: bool = False
    type_label: str = ""
    reason: str = ""

    @property
    def passed(self):
        return self.integral and self.indivisible and self.configuration_ok


@dataclass
class CertificateReport:
    case_id: int
    claim: str
    entries: list = field(default_factory=list)
    products: list = field(default_factory=list)
    matrix_ok: bool = False
    bound_ok: bool = False
    error: str = ""

    @property
    def m(self):
        return len(self.entries)

    @property
    def passed(self):
        return (not self.error and self.matrix_ok and self.bound_ok
                and all(e.passed for e in self.entries))

    @property
    def type_summary(self):
        counts = Counter(e.type_label for e in self.entries if e.type_label)
        return ", ".join(f"{n}x{t}" if n > 1 else t for t, n in sorted(counts.items()))

    def as_dict(self):
        return {
            "case_id": self.case_id,
            "claim": self.claim,
            "status": "PASS" if self.passed else "FAIL",
            "m": self.m,
            "matrix_ok": self.matrix_ok,
            "bound_ok": self.bound_ok,
            "products": self.products,
            "types": [e.type_label for e in self.entries],
            "error": self.error,
            "entries": [
                {"notation": e.notation, "coords": e.coords, "integral": e.integral,
                 "indivisible": e.indivisible, "configuration_ok": e.configuration_ok,
                 "type": e.type_label, "reason": e.reason}
                for e in self.entries
            ],
        }


def resolve_curve(word, system, gens):
    """Coordinates of the curve named by ``word``.

    Looks for a curve carrying exactly this word, then for the base label
    moved by the generators.
    """
    if word.word:
        for i, w in enumerate(system.words):
            if w is not None and w.base == word.base and w.word == word.word:
                return system.vectors[i]
        try:
            return system.vectors[system.index(word.label())]
        except KeyError:
            pass
    try:
        base = system.vectors[system.index(f"R{word.base}")]
    except KeyError:
        raise LookupError(f"no curve labelled R{word.base}") from None
    if not word.word:
        return base
    try:
        return apply_word(base, word.word, gens)
    except UnknownGenerator as exc:
        raise LookupError(f"generator {exc.args[0]} not available") from None


def _resolve_entry(k, entry, system, gens):
    curves = []
    for t, (mult, word) in enumerate(entry.terms):
        try:
            curves.append((mult, vector(resolve_curve(word, system, gens))))
        except LookupError as exc:
            raise UnresolvableCurve(k, t, str(exc)) from None
    return curves


def verify_certificate(cert, system, gens):
    report = CertificateReport(cert.case_id, cert.claim)
    resolved = [_resolve_entry(k, e, system, gens) for k, e in enumerate(cert.members)]

    # one curve system over every distinct support curve
    distinct = {}
    for curves in resolved:
        for _, v in curves:
            distinct.setdefault(v.tobytes(), v)
    keys = list(distinct)
    try:
        local = CurveSystem([distinct[k] for k in keys], [f"c{i}" for i in range(len(keys))])
    except CurveSystemError as exc:
        report.error = f"support curves are not a valid curve system: {exc}"
        local = None
    pos = {k: i for i, k in enumerate(keys)}

    rows = []
    for entry, curves in zip(cert.members, resolved):
        er = EntryReport(entry.notation())
        num = sum(m * v.astype(np.int64) for m, v in curves)
        if np.any(num % entry.denominator):
            er.reason = "class is not integral"
        else:
            cls = vector(num // entry.denominator)
            er.coords = [int(x) for x in cls]
            er.integral = True
            er.indivisible = not is_two_divisible(cls)
            if not er.indivisible:
                er.reason = "class is 2-divisible"
            rows.append(cls)
        if local is not None:
            terms = [(m * 1, pos[v.tobytes()]) for m, v in curves]
            cfg, ok, why = configuration_from_terms(local, terms)
            er.configuration_ok = ok
            if cfg is not None:
                er.type_label = f"{cfg.dynkin_type}^{'F' if entry.denominator == 2 else 'HF'}"
            if not ok:
                er.reason = er.reason or why
        report.entries.append(er)

    if len(rows) == len(cert.members):
        m = len(rows)
        arr = np.array(rows, dtype=np.int64).reshape(m, 10)
        prod = np.asarray(product_matrix(arr)).astype(np.int64)
        report.products = prod.tolist()
        report.matrix_ok = bool(np.array_equal(prod, np.ones((m, m), dtype=np.int64) - np.eye(m, dtype=np.int64)))
    report.bound_ok = len(cert.members) == cert.claimed_bound
    return report


@dataclass
class CorpusRow:
    case_id: int
    status: str         # PASS, FAIL or SKIPPED
    detail: str = ""
    report: CertificateReport = None


def verify_corpus(corpus, data_root=None):
    """Verify every certificate whose case snapshot ``<data_root>/<id>.json``
    exists; the others are SKIPPED. Rows are ordered by case id."""
    from . import data_io

    root = Path(data_root) if data_root is not None else data_io.bundled_path("cases")
    rows = []
    for cert in sorted(corpus, key=lambda c: c.case_id):
        path = root / f"{cert.case_id}.json"
        if not path.exists():
            rows.append(CorpusRow(cert.case_id, "SKIPPED", "no curve data"))
            continue
        try:
            case = data_io.load_case(path)
            rep = verify_certificate(cert, case.system, case.gens)
        except EnriquesError as exc:
            rows.append(CorpusRow(cert.case_id, "FAIL", str(exc)))
            continue
        rows.append(CorpusRow(cert.case_id, "PASS" if rep.passed else "FAIL",
                              rep.type_summary if rep.passed else _first_failure(rep), rep))
    return rows


def _first_failure(rep):
    if rep.error:
        return rep.error
    for i, e in enumerate(rep.entries):
        if not e.passed:
            return f"member {i + 1}: {e.reason}"
    if not rep.matrix_ok:
        return "product matrix is not 1 - I"
    if not rep.bound_ok:
        return f"{rep.m} members but bound {rep.claim}"
    return ""
