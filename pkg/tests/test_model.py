from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from corpus import PATH4, TRIANGLE, atlas_graphs, full_corpus
from jdmgraph.errors import EmptyGraph, NonIntegerDegreeCount, NotGraphical
from jdmgraph.model import (
    DegreeVector,
    JointDegreeMatrix,
    Pseudograph,
    SimpleGraph,
    derive_degree_vector,
    edge_count,
    edge_mean,
    erdos_gallai_check,
    extract_jdm,
    is_graphical,
    slot_count,
)
from jdmgraph.oracle import enumerate_realizations


def test_jdm_keys_are_canonical():
    j = JointDegreeMatrix({(3, 1): 2})
    assert list(j) == [(1, 3)]
    assert j[(3, 1)] == j[(1, 3)] == 2
    with pytest.raises(ValueError):
        JointDegreeMatrix([((1, 3), 1), ((3, 1), 1)])
    with pytest.raises(ValueError):
        JointDegreeMatrix({(0, 2): 1})


def test_simple_graph_rejects_loops_and_duplicates():
    with pytest.raises(ValueError):
        SimpleGraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        SimpleGraph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        SimpleGraph(2, [(0, 2)])


def test_derive_degree_vector():
    assert derive_degree_vector(TRIANGLE) == {2: 3}
    assert derive_degree_vector(PATH4) == {1: 2, 2: 2}
    with pytest.raises(NonIntegerDegreeCount) as info:
        derive_degree_vector(JointDegreeMatrix({(1, 2): 1}))
    assert (info.value.degree, info.value.endpoints) == (2, 1)


@pytest.mark.parametrize("jdm, m", [({}, 0), ({(2, 2): 3}, 3), ({(1, 2): 2, (2, 2): 1}, 3)])
def test_edge_count(jdm, m):
    assert edge_count(JointDegreeMatrix(jdm)) == m


def test_is_graphical_examples():
    assert is_graphical(TRIANGLE).graphical
    rep = is_graphical(JointDegreeMatrix({(2, 2): 2}))
    assert not rep.graphical
    assert [(v.condition, v.pair) for v in rep.violations] == [("self-capacity", (2, 2))]
    rep = is_graphical(JointDegreeMatrix({(1, 2): 1}))
    assert [v.condition for v in rep.violations] == ["integrality"]


def test_is_graphical_reports_every_violation():
    # D_2 = 1, D_4 = 1: J[2,4] = 2 > 1 and J[4,4] = 1 > C(1, 2) = 0
    rep = is_graphical(JointDegreeMatrix({(2, 4): 2, (4, 4): 1}))
    assert [(v.condition, v.pair) for v in rep.violations] == [
        ("cross-capacity", (2, 4)), ("self-capacity", (4, 4)),
    ]
    # degrees 2, 3 and 5 all fail integrality
    rep = is_graphical(JointDegreeMatrix({(1, 3): 2, (2, 5): 1}))
    assert sorted(v.pair for v in rep.violations) == [(2, 2), (3, 3), (5, 5)]
    assert {v.condition for v in rep.violations} == {"integrality"}


@pytest.mark.parametrize("dv, expected", [
    ({2: 3}, True), ({3: 2}, False), ({1: 2, 2: 2}, True), ({1: 1}, False), ({4: 1, 1: 4}, True),
])
def test_erdos_gallai(dv, expected):
    assert erdos_gallai_check(DegreeVector(dv)) is expected


def _brute_graphical_sequence(seq):
    """Does any simple graph on len(seq) vertices have degree sequence seq?"""
    n = len(seq)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m2 = sum(seq)
    if m2 % 2:
        return False

    def rec(i, residual, left):
        if left == 0:
            return not any(residual)
        if i == len(pairs):
            return False
        u, v = pairs[i]
        if residual[u] and residual[v]:
            residual[u] -= 1
            residual[v] -= 1
            if rec(i + 1, residual, left - 1):
                return True
            residual[u] += 1
            residual[v] += 1
        return rec(i + 1, residual, left)

    return rec(0, list(seq), m2 // 2)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
def test_erdos_gallai_matches_brute_force(seq):
    assert erdos_gallai_check(seq) == _brute_graphical_sequence(seq)


def test_extract_jdm_examples():
    assert extract_jdm(SimpleGraph(3, [(0, 1), (1, 2), (0, 2)])) == TRIANGLE
    assert extract_jdm(SimpleGraph(4, [(0, 1), (1, 2), (2, 3)])) == PATH4
    with pytest.raises(EmptyGraph):
        extract_jdm(SimpleGraph(3, []))


def test_extract_jdm_pseudograph_counts_loops_twice():
    g = Pseudograph(2, [(0, 0), (0, 1), (0, 1)])
    assert g.degrees() == [4, 2]
    assert extract_jdm(g) == {(4, 4): 1, (2, 4): 2}


def test_extract_jdm_karate(karate_jdm):
    assert len(karate_jdm) == 40
    assert edge_count(karate_jdm) == 78
    assert derive_degree_vector(karate_jdm).vertex_count == 34


def test_round_trip_on_atlas():
    for g in atlas_graphs():
        j = extract_jdm(g)
        hist = DegreeVector.from_degrees(g.degrees())
        assert derive_degree_vector(j) == hist
        assert edge_count(j) == len(g.edges)


def test_edge_mean_examples():
    assert edge_mean(TRIANGLE, 2, 2) == 1
    assert edge_mean(PATH4, 1, 2) == Fraction(1, 2)
    assert edge_mean(PATH4, 2, 2) == 1
    assert edge_mean(PATH4, 1, 1) == 0
    with pytest.raises(NotGraphical):
        edge_mean(JointDegreeMatrix({(2, 2): 2}), 2, 2)


def test_edge_mean_slot_identity():
    for j in full_corpus():
        if not is_graphical(j):
            continue
        dv = derive_degree_vector(j)
        ks = sorted(dv)
        total = sum(
            slot_count(dv, k, l) * edge_mean(j, k, l)
            for i, k in enumerate(ks) for l in ks[i:]
        )
        assert total == edge_count(j)


def test_graphical_jdms_pass_erdos_gallai():
    for j in full_corpus():
        if is_graphical(j):
            assert erdos_gallai_check(derive_degree_vector(j))


def test_graphicality_matches_enumeration_small():
    for j in full_corpus():
        if sum(j.values()) > 8 or max(j.degrees()) > 5:
            continue
        rs = enumerate_realizations(j)
        assert bool(rs.graphs) == is_graphical(j).graphical, j


def test_probabilities():
    assert PATH4.probabilities() == {(1, 2): Fraction(2, 3), (2, 2): Fraction(1, 3)}
    assert derive_degree_vector(PATH4).probabilities() == {1: Fraction(1, 2), 2: Fraction(1, 2)}
    assert comb(3, 2) == 3
