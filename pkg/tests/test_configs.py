import numpy as np
import pytest
from hypothesis import given, strategies as st

from enriques_nd.action import expand_orbit
from enriques_nd.configs import (DynkinType, affine_marks, analyse_support,
                                 brute_force_configurations, configuration_from_terms,
                                 enumerate_configurations, kernel_vector, label_type,
                                 structural_type)
from enriques_nd.errors import Inconsistent
from enriques_nd.lattice import dot, square


def affine_block(family, n):
    """Intersection matrix (-2 diagonal) of an affine Dynkin diagram."""
    if family == "A":
        size = n + 1
        adj = np.zeros((size, size), dtype=np.int64)
        if n == 1:
            adj[0, 1] = adj[1, 0] = 2
        for i in range(size if n > 1 else 0):
            j = (i + 1) % size
            adj[i, j] = adj[j, i] = 1
    else:
        if family == "D":
            edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
            size = n + 1
        else:
            arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[n]
            edges, size = [], 1
            for length in arms:
                prev = 0
                for _ in range(length):
                    edges.append((prev, size))
                    prev, size = size, size + 1
        adj = np.zeros((size, size), dtype=np.int64)
        for a, b in edges:
            adj[a, b] = adj[b, a] = 1
    return adj - 2 * np.eye(len(adj), dtype=np.int64)


AFFINE = [("A", n) for n in range(1, 10)] + [("D", n) for n in range(4, 10)] + [("E", 6), ("E", 7), ("E", 8)]


@pytest.mark.parametrize("family,n", AFFINE)
def test_affine_diagrams(family, n):
    block = affine_block(family, n)
    mult = kernel_vector(block)
    assert mult is not None and min(mult) > 0
    assert tuple(sorted(mult)) == affine_marks(family, n)
    assert structural_type(block) == DynkinType(family, n)
    assert label_type(block, mult) == DynkinType(family, n)


def test_dynkin_type_text():
    t = DynkinType("E", 8)
    assert str(t) == "~E8"
    assert DynkinType.parse("~D4") == DynkinType("D", 4)
    assert t.unicode.endswith("₈")


def test_finite_diagram_has_no_kernel():
    a3 = affine_block("A", 3)[:3, :3]
    assert kernel_vector(a3) is None


def test_label_type_inconsistent():
    block = affine_block("D", 4)
    with pytest.raises(Inconsistent):
        label_type(block, (1, 1, 1, 1, 1))


def test_configuration_from_terms(case145):
    s = case145.system
    cfg, ok, why = configuration_from_terms(s, [(1, i) for i in (0, 2, 3, 4, 5, 6, 7, 9)])
    assert ok and str(cfg.dynkin_type) == "~A7" and why == ""
    cfg, ok, why = configuration_from_terms(s, [(2, 0), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 9)])
    assert not ok and "Kodaira" in why
    _, ok, why = configuration_from_terms(s, [(1, 2), (1, 4)])
    assert not ok and "corank" in why
    _, ok, _ = configuration_from_terms(s, [(1, 0)])
    assert not ok


def test_case145_configurations(case145):
    cfgs = enumerate_configurations(case145.system)
    types = {str(c.dynkin_type) for c in cfgs}
    assert {"~A7", "~D8", "~E7"} <= types
    a7 = [c for c in cfgs if c.support == (0, 2, 3, 4, 5, 6, 7, 9)]
    assert len(a7) == 1 and a7[0].multiplicities == (1,) * 8
    for c in cfgs:
        assert tuple(sorted(c.multiplicities)) == affine_marks(c.dynkin_type.family, c.dynkin_type.rank)


@pytest.mark.parametrize("name", ["145", "158", "145r1"])
def test_enumeration_equals_brute_force(name, case145, case158):
    if name == "158":
        s = case158.system
    elif name == "145":
        s = case145.system
    else:
        s = expand_orbit(case145.system, case145.gens, 1)
    ref = brute_force_configurations(s)
    assert enumerate_configurations(s) == ref
    assert enumerate_configurations(s, prune=False) == ref


def test_max_support_bounds(case158):
    small = enumerate_configurations(case158.system, max_support=2)
    assert small and all(len(c.support) == 2 for c in small)
    with pytest.raises(ValueError):
        enumerate_configurations(case158.system, max_support=11)


@given(data=st.data())
def test_random_subsystems(data, case145, case158):
    s = data.draw(st.sampled_from([case145.system, case158.system]))
    idx = data.draw(st.lists(st.integers(0, len(s) - 1), min_size=2, max_size=len(s), unique=True))
    sub = s.subsystem(sorted(idx))
    assert enumerate_configurations(sub) == brute_force_configurations(sub)


def test_analyse_support_rejects(case158):
    s = case158.system
    assert analyse_support(s, (0,)) is None
    assert analyse_support(s, (1, 2)) is None         # disjoint curves


def test_configuration_kernel_is_orthogonal(case158):
    s = case158.system
    for c in enumerate_configurations(s):
        assert square(c.klass) == 0
        assert all(dot(c.klass, s.vectors[i]) == 0 for i in c.support)
