import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secantplanes import graphcomb
from secantplanes.graphcomb import LabeledMultigraph


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 9).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(1, d), min_size=d - 2, max_size=d - 2))))
def test_prufer_decode_gives_a_tree(case):
    d, seq = case
    edges = graphcomb.prufer_decode(tuple(seq), d)
    assert len(edges) == d - 1
    parent = list(range(d + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        assert ri != rj
        parent[ri] = rj


@pytest.mark.parametrize("d", range(1, 7))
def test_cayley(d):
    assert graphcomb.tree_count(d) == d ** max(d - 2, 0)


@pytest.mark.parametrize("d", range(1, 7))
def test_tree_identity(d):
    total, check = graphcomb.tree_weight_sum(d)
    assert check.passed
    assert (2 * d - 1) * total == math.comb(2 * d - 1, d - 1) * math.factorial(d - 1)


@pytest.mark.parametrize("d", range(2, 7))
def test_connected_sums(d):
    s1, s2, checks = graphcomb.connected_graph_sums(d)
    assert all(c.passed for c in checks), [c.to_row() for c in checks]


@pytest.mark.parametrize("d", range(3, 6))
def test_unicyclic_by_brute_force(d):
    s1, _, _ = graphcomb.connected_graph_sums(d)
    assert graphcomb.unicyclic_sum_direct(d) == s1


@pytest.mark.parametrize("d", range(2, 7))
def test_indegree_classes(d):
    total = 0
    for lam in graphcomb.partitions(d - 1):
        count, closed = graphcomb.trees_by_indegree(lam, d)
        assert count == closed
        total += count
    assert total == d ** (d - 2)


def test_partitions():
    assert list(graphcomb.partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partition_must_sum():
    with pytest.raises(ValueError):
        graphcomb.trees_by_indegree((2, 2), 4)


def test_exponential_formula():
    assert graphcomb.exponential_consistency(5).passed


def test_multigraph_weight():
    # indegrees (0, 0, 2) and a doubled edge
    gph = LabeledMultigraph(3, ((1, 3), (1, 3)))
    assert gph.weight() == Fraction(2, 2)
    star = LabeledMultigraph(3, ((1, 3), (2, 3)))
    assert star.weight() == 2


def test_multigraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        LabeledMultigraph(3, ((2, 1),))
    with pytest.raises(ValueError):
        LabeledMultigraph(3, ((1, 2),), frozenset({5}))


def test_identity_rows_serialize():
    rows = graphcomb.identity_rows(4)
    assert rows and all(r["pass"] for r in rows)
    assert {r["identity"] for r in rows} == {"tree", "S1", "S2"}
