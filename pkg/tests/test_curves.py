import numpy as np
import pytest

from enriques_nd.curves import CurveSystem, build_system, spans_full_rank
from enriques_nd.errors import Duplicate, NegativePairing, NotMinusTwo
from oracles import LABELS158, M158, R145, R158


def test_case158_intersection_matrix_matches_print():
    s = CurveSystem(R158, LABELS158)
    assert np.array_equal(s.intersections, np.array(M158))
    assert spans_full_rank(s)


def test_case145_dual_graph():
    s = build_system(R145)
    edges = {(i, j) for i in range(10) for j in range(i + 1, 10) if s.intersections[i, j]}
    cycle = [0, 2, 3, 4, 5, 6, 7, 9]
    expected = {tuple(sorted((cycle[t], cycle[(t + 1) % 8]))) for t in range(8)} | {(1, 4), (8, 9)}
    assert edges == expected
    assert all(s.intersections[i, j] == 1 for i, j in edges)
    assert s.labels == [f"R{i}" for i in range(10)]


def test_errors_name_offenders():
    with pytest.raises(NotMinusTwo) as err:
        CurveSystem([R145[0], [0, 1, 0, 0, 0, 0, 0, 0, 0, 0], [1, 1] + [0] * 8])
    assert err.value.index == 2
    with pytest.raises(Duplicate) as err:
        CurveSystem([R145[2], R145[3], R145[2]])
    assert (err.value.i, err.value.j) == (0, 2)
    neg = [-x for x in R145[3]]
    with pytest.raises(NegativePairing) as err:
        CurveSystem([R145[2], R145[4], neg])
    assert (err.value.i, err.value.j) == (0, 2)   # R2 meets R3 once


def test_labels_unique_and_lookup():
    s = CurveSystem(R158, LABELS158)
    assert s.index("R2·H2") == 15
    assert s.find(R158[4]) == 4
    assert s.find([0] * 9 + [3]) is None
    with pytest.raises(ValueError):
        CurveSystem(R145[:2], ["a", "a"])


def test_subsystem_and_neighbours():
    s = build_system(R145)
    assert sorted(s.neighbours(4)) == [1, 3, 5]
    sub = s.subsystem([0, 2, 3])
    assert len(sub) == 3 and sub.labels == ["R0", "R2", "R3"]
    assert sub.intersections[0, 1] == 1


def test_rank_deficient_system():
    assert not spans_full_rank(build_system(R145[2:6]))
