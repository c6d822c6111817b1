from dataclasses import replace

import numpy as np
import pytest

from enriques_nd import data_io
from enriques_nd.action import OrbitWord
from enriques_nd.certificates import (Certificate, CertificateEntry, resolve_curve,
                                      verify_certificate, verify_corpus)
from enriques_nd.errors import UnresolvableCurve
from enriques_nd.solver import verify_sequence
from oracles import F158, F158_TERMS, F158_TYPES, LABELS158


def cert158_from_oracle():
    members = []
    for den, terms in F158_TERMS:
        ws = []
        for mult, label in terms:
            if label == "R2·H2":
                ws.append((mult, OrbitWord(2, (("H2", 1),))))
            else:
                ws.append((mult, OrbitWord(int(label[1:]))))
        members.append(CertificateEntry(den, tuple(ws)))
    return Certificate(158, 9, False, tuple(members))


def test_case158_certificate(case158):
    rep = verify_certificate(cert158_from_oracle(), case158.system, case158.gens)
    assert rep.passed
    assert [tuple(e.coords) for e in rep.entries] == F158
    assert [e.type_label for e in rep.entries] == F158_TYPES
    assert rep.type_summary == "6x~A1^F, ~A1^HF, 2x~D4^F"
    assert rep.products == (np.ones((9, 9), dtype=int) - np.eye(9, dtype=int)).tolist()


def test_bundled_158_certificate_equals_oracle():
    (c,) = data_io.load_certificates(data_io.bundled_path("certs", "158.json"))
    assert c.members == cert158_from_oracle().members


def test_order_free(case158):
    c = cert158_from_oracle()
    m = list(c.members)
    m[1], m[2] = m[2], m[1]
    assert verify_certificate(replace(c, members=tuple(m)), case158.system, case158.gens).passed


def test_case145_certificate(case145):
    (c,) = data_io.load_certificates(data_io.bundled_path("certs", "145.json"))
    rep = verify_certificate(c, case145.system, case145.gens)
    assert rep.passed
    assert [e.type_label for e in rep.entries] == ["~A7^HF", "~D8^F", "~D8^F", "~E7^F"]


def test_failures_are_reported(case158):
    c = cert158_from_oracle()
    m = list(c.members)
    # wrong multiplicity: (R1 + R6 + R8 + R15 + R7)/2 is not integral
    m[7] = CertificateEntry(2, tuple((1, w) for _, w in m[7].terms))
    rep = verify_certificate(replace(c, members=tuple(m)), case158.system, case158.gens)
    assert not rep.passed and not rep.entries[7].integral
    # a fiber (2-divisible) instead of a half-fiber
    m = list(c.members)
    m[0] = CertificateEntry(1, tuple((2, w) for _, w in m[0].terms))
    rep = verify_certificate(replace(c, members=tuple(m)), case158.system, case158.gens)
    assert not rep.entries[0].indivisible and not rep.passed
    # claimed bound does not match
    rep = verify_certificate(replace(c, claimed_bound=10), case158.system, case158.gens)
    assert rep.matrix_ok and not rep.bound_ok and not rep.passed
    # duplicated member breaks the product matrix
    rep = verify_certificate(replace(c, members=c.members[:8] + c.members[:1]), case158.system, case158.gens)
    assert not rep.matrix_ok


def test_unresolvable(case145, case158):
    c = Certificate(145, 1, False, (CertificateEntry(2, ((1, OrbitWord(0, (("H9", 1),))),)),))
    with pytest.raises(UnresolvableCurve):
        verify_certificate(c, case145.system, case145.gens)
    c = Certificate(158, 1, False, (CertificateEntry(2, ((1, OrbitWord(42)),)),))
    with pytest.raises(UnresolvableCurve):
        verify_certificate(c, case158.system, case158.gens)


def test_resolve_curve(case145, case158):
    v = resolve_curve(OrbitWord(8, (("gamma", 1),)), case145.system, case145.gens)
    assert tuple(v) == (10, 4, 11, 18, 15, 12, 9, 6, 4, 2)
    v = resolve_curve(OrbitWord(2, (("H2", 1),)), case158.system, case158.gens)
    assert tuple(v) == (12, 7, 14, 23, 20, 19, 14, 10, 6, 2)


def test_pass_implies_sequence_pass(case158):
    rep = verify_certificate(cert158_from_oracle(), case158.system, case158.gens)
    assert verify_sequence([tuple(e.coords) for e in rep.entries]).passed


def test_corpus():
    corpus = data_io.bundled_certificates()
    rows = verify_corpus([c for c in corpus if c.case_id in (145, 158)])
    assert [(r.case_id, r.status) for r in rows] == [(145, "PASS"), (158, "PASS")]
    rows = verify_corpus([c for c in corpus if c.case_id == 2])
    assert rows[0].status == "SKIPPED"
    rows = verify_corpus(corpus)
    assert [r.case_id for r in rows] == sorted(r.case_id for r in rows)
    assert sum(r.status == "PASS" for r in rows) == 2
    assert not any(r.status == "FAIL" for r in rows)


def test_corpus_custom_root(tmp_path):
    corpus = [c for c in data_io.bundled_certificates() if c.case_id in (145, 158)]
    (tmp_path / "145.json").write_text(data_io.bundled_path("cases", "145.json").read_text())
    rows = verify_corpus(corpus, tmp_path)
    assert [(r.case_id, r.status) for r in rows] == [(145, "PASS"), (158, "SKIPPED")]


def test_report_dict(case158):
    d = verify_certificate(cert158_from_oracle(), case158.system, case158.gens).as_dict()
    assert d["status"] == "PASS" and d["m"] == 9 and d["claim"] == "nd(Y158) >= 9"
    assert d["entries"][2]["notation"] == "1/2(R2 + R2·H2)"
