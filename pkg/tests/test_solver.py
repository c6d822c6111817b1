import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from enriques_nd.errors import NotIsotropic
from enriques_nd.halffibers import build_hf_set
from enriques_nd.lattice import RationalClass
from enriques_nd.solver import compatibility_graph, compute_cnd, verify_sequence
from oracles import F158, R145


@pytest.fixture(scope="module")
def hf158(case158):
    return build_hf_set(case158.system)


@pytest.fixture(scope="module")
def hf145(case145):
    return build_hf_set(case145.system)


def test_case158_cnd(hf158):
    m, seq = compute_cnd(hf158)
    assert m == 9
    assert {c.klass for c in seq.members} == set(F158)
    assert seq.length == 9 and list(seq.indices) == sorted(seq.indices)


def test_case145_cnd(hf145):
    m, seq = compute_cnd(hf145)
    assert m == 4
    assert verify_sequence(seq.members).passed


def test_backends_agree(hf158, hf145):
    for hf in (hf158, hf145):
        a = compute_cnd(hf, backend="numpy")
        b = compute_cnd(hf, backend="numba")
        assert a[0] == b[0] and a[1].indices == b[1].indices


def test_empty_and_cap(hf158):
    assert compute_cnd([])[0] == 0
    assert compute_cnd(hf158, cap=3)[0] == 3


def test_verify_sequence_examples():
    rep = verify_sequence(F158)
    assert rep.passed and rep.m == 9
    assert rep.products == (np.ones((9, 9), dtype=int) - np.eye(9, dtype=int)).tolist()
    swapped = [F158[0], F158[2], F158[1]] + F158[3:]
    assert verify_sequence(swapped).passed
    assert not verify_sequence(F158[:2] + [F158[0]]).passed
    half = RationalClass([1] + [0] * 9, 2)
    assert not verify_sequence([half]).passed
    assert not verify_sequence([tuple(2 * x for x in F158[0])]).passed


def test_not_isotropic():
    with pytest.raises(NotIsotropic) as err:
        compatibility_graph([F158[0], R145[0]])
    assert err.value.index == 1


def oracle_clique_number(adj):
    g = nx.from_numpy_array(adj.astype(int))
    return max((len(c) for c in nx.find_cliques(g)), default=0)


@given(data=st.data())
def test_solver_matches_clique_oracle(data, hf158, hf145):
    pool = data.draw(st.sampled_from([hf158, hf145]))
    idx = data.draw(st.lists(st.integers(0, len(pool) - 1), max_size=20, unique=True))
    sub = [pool[i] for i in sorted(idx)]
    m, seq = compute_cnd(sub)
    if sub:
        _, adj = compatibility_graph(sub)
        assert m == min(oracle_clique_number(adj), 10)
        for a, b in itertools.combinations(seq.indices, 2):
            assert adj[a, b]
    else:
        assert m == 0
