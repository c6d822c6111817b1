from fractions import Fraction as Fr

import numpy as np
import pytest

from enriques_nd.action import GeneratorSet, apply_word
from enriques_nd.data_io import CaseData
from enriques_nd.errors import ProofStepFailed
from enriques_nd.lattice import dot, halve, isometry_inverse
from enriques_nd.proof145 import CONCLUSION, STEP_NAMES, case145_exclusion_proof
from enriques_nd.quasipoly import QuasiPolynomial
from oracles import EPS, GAMMA, R145

H = Fr(1, 2)
R = [np.array(v, dtype=np.int64) for v in R145]
GENS = GeneratorSet({"eps": EPS, "gamma": GAMMA})


def combo(terms, den=2):
    return halve(sum(m * R[i] for m, i in terms)) if den == 2 else sum(m * R[i] for m, i in terms)


D_A = combo([(1, 0), (1, 1), (1, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 9), (1, 8)])
D_B = combo([(2, 0), (1, 1), (2, 2), (2, 3), (2, 4), (1, 5), (1, 7), (2, 9), (1, 8)])
E_A = combo([(1, 1), (2, 4), (3, 5), (4, 6), (5, 7), (6, 9), (4, 0), (2, 2), (3, 8)])
E_B = combo([(2, 6), (4, 7), (6, 9), (5, 0), (4, 2), (3, 3), (2, 4), (1, 1), (3, 8)])
A7 = combo([(1, i) for i in (0, 2, 3, 4, 5, 6, 7, 9)], den=1)


def g(v, k, *pre):
    return apply_word(v, list(pre) + [("gamma", k)], GENS)


@pytest.fixture(scope="module")
def report():
    return case145_exclusion_proof()


def test_full_run(report):
    assert report.passed
    assert [s.name for s in report.steps] == list(STEP_NAMES)
    assert report.conclusion == CONCLUSION
    assert report.assumptions


def test_identities_recorded(report):
    ids = {i.name: i for s in report.steps for i in s.identities}
    assert ids["D_a.D_b,k"].fitted == "k^2 + 1/2(-1)^k + 1/2"
    assert ids["E_a.E_b,eps,k"].solutions == [1]
    assert ids["E_a.D_a,k"].solutions == [0]
    assert all(i.holds for i in ids.values())
    d = report.as_dict()
    assert d["passed"] and d["steps"][0]["step"] == "isometries"


FORMS = [
    (lambda k: dot(D_A, g(D_B, k)), QuasiPolynomial(1, 0, H, H)),
    (lambda k: dot(D_A, g(D_A, k)), QuasiPolynomial(1, 0, H, -H)),
    (lambda k: dot(E_A, g(E_B, k)), QuasiPolynomial(4, 0, 3, 0)),
    (lambda k: dot(E_A, g(E_B, k, ("eps", 1))), QuasiPolynomial(4, -4, 3, 2)),
    (lambda k: dot(E_A, g(E_A, k, ("eps", 1))), QuasiPolynomial(4, -4, 4, 0)),
    (lambda k: dot(E_A, g(D_A, k)), QuasiPolynomial(2, -1, 3 * H, -H)),
]


@pytest.mark.parametrize("func,form", FORMS)
def test_forms_hold_at_fresh_k(func, form):
    # the replay fits on [-6, 6]; check ten values it never saw
    for k in list(range(21, 26)) + list(range(-30, -25)):
        assert func(k) == form(k)


def test_a7_invariance_alone():
    assert np.array_equal(apply_word(A7, [("eps", 1)], GENS), A7)
    assert np.array_equal(apply_word(A7, [("gamma", 1)], GENS), A7)
    for k in range(-5, 6):
        assert dot(A7, g(E_A, k)) == 2 and dot(A7, g(E_B, k, ("eps", 1))) == 2


def test_perturbed_db_fails_at_d8_step():
    bad = D_B.copy()
    bad[9] += 1
    with pytest.raises(ProofStepFailed) as err:
        case145_exclusion_proof(overrides={"D_b": bad})
    assert err.value.step == "d8-orthogonality"
    assert err.value.report.steps[-1].name == "d8-orthogonality"
    assert all(s.passed for s in err.value.report.steps[:-1])


def test_perturbed_ea_fails_at_e8_step():
    with pytest.raises(ProofStepFailed) as err:
        case145_exclusion_proof(overrides={"E_a": E_B * 1 + np.eye(10, dtype=np.int64)[0]})
    assert err.value.step == "e8-orthogonality"


def snapshot(eps, gamma):
    from enriques_nd.curves import build_system
    return CaseData(145, build_system(R145), GeneratorSet({"eps": eps, "gamma": gamma}))


def test_inverted_gamma_is_caught():
    with pytest.raises(ProofStepFailed) as err:
        case145_exclusion_proof(snapshot(EPS, isometry_inverse(GAMMA)))
    assert err.value.step == "curve-action"


def test_broken_relation_is_caught():
    with pytest.raises(ProofStepFailed) as err:
        case145_exclusion_proof(snapshot(np.eye(10, dtype=np.int64), GAMMA))
    assert err.value.step == "relations"
