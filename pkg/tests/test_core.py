"""Permutation, partial permutation, family, and trace-calculus behavior."""

import itertools
import math
import random

import pytest

from permemc import (
    DimensionMismatch,
    compose,
    derangements,
    double_derangements,
    double_derangement_count,
    enumerate_family,
    family,
    graph,
    identity,
    intersects,
    inverse,
    is_derangement,
    is_partial_permutation,
    partial_permutation,
    set_matching_number,
    subfamily_containing,
    subfamily_containing_any,
    symmetric_group,
    trace,
)
from permemc.core import ENUMERATION_CAP


def test_compose_identity():
    assert compose(identity(3), (2, 3, 1)) == (2, 3, 1)


def test_compose_involution():
    assert compose((2, 1, 3), (2, 1, 3)) == (1, 2, 3)


def test_compose_cycles_cancel():
    # direct evaluation: a(b(i)) with a = (2,3,1), b = (3,1,2)
    assert compose((2, 3, 1), (3, 1, 2)) == (1, 2, 3)
    assert compose((3, 1, 2), (2, 3, 1)) == (1, 2, 3)


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose((1, 2), (2, 3, 1))


def test_inverse_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        p = tuple(rng.sample(range(1, 7), 6))
        assert compose(p, inverse(p)) == identity(6)
        assert compose(inverse(p), p) == identity(6)


def test_intersects_equal():
    assert intersects((1, 2, 3), (1, 2, 3))


def test_intersects_disjoint_pair():
    assert not intersects((2, 1, 4, 3), (3, 4, 1, 2))


def test_intersects_single_position():
    assert intersects((1, 2, 4, 3), (2, 1, 4, 3))


def test_intersects_matches_graph_intersection():
    rng = random.Random(2)
    for _ in range(50):
        a = tuple(rng.sample(range(1, 6), 5))
        b = tuple(rng.sample(range(1, 6), 5))
        assert intersects(a, b) == bool(graph(a) & graph(b))


def test_disjointness_duality_exhaustive():
    # a, b disjoint  <=>  a b^{-1} is a derangement
    for n in (2, 3, 4, 5):
        members = symmetric_group(n).members
        for a in members:
            for b in members:
                assert (not intersects(a, b)) == is_derangement(compose(a, inverse(b)))


def test_partial_permutation_validation():
    assert is_partial_permutation([(1, 1), (2, 2)])
    assert not is_partial_permutation([(1, 1), (2, 1)])
    assert not is_partial_permutation([(1, 1), (1, 2)])
    with pytest.raises(ValueError):
        partial_permutation([(1, 1), (2, 1)])
    with pytest.raises(ValueError):
        partial_permutation([(1, 7)], n=4)


def test_family_canonical_order_and_dedup():
    f = family(3, [(3, 1, 2), (1, 2, 3), (3, 1, 2)])
    assert f.members == ((1, 2, 3), (3, 1, 2))
    assert len(f) == 2


def test_family_rejects_non_permutations():
    with pytest.raises(ValueError):
        family(3, [(1, 2, 2)])
    with pytest.raises(ValueError):
        family(3, [(1, 2)])


def test_family_label_ignored_by_equality():
    a = family(3, [(1, 2, 3)], label="x")
    b = family(3, [(1, 2, 3)], label="y")
    assert a == b


def test_trace_star_size():
    assert len(trace(symmetric_group(4), [(1, 1)])) == math.factorial(3)


def test_trace_empty_restriction_is_family():
    f = symmetric_group(3)
    assert len(trace(f, [])) == len(f)


def test_trace_column_clash_empty():
    assert trace(symmetric_group(3), [(1, 1), (2, 1)]) == ()


def test_trace_residue_sizes():
    residues = trace(symmetric_group(4), [(2, 3)])
    assert all(len(r) == 3 for r in residues)
    assert all((2, 3) not in r for r in residues)


def test_subfamily_pinned():
    sub = subfamily_containing(symmetric_group(3), [(1, 1)])
    assert sub.members == ((1, 2, 3), (1, 3, 2))


def test_subfamily_empty_restriction():
    f = symmetric_group(3)
    assert subfamily_containing(f, []) == f


def test_subfamily_row_clash():
    assert len(subfamily_containing(symmetric_group(3), [(1, 1), (1, 2)])) == 0


def test_subfamily_union_form():
    f = symmetric_group(3)
    u = subfamily_containing_any(f, [[(1, 1)], [(1, 2)]])
    assert len(u) == 4  # two disjoint stars of size 2


def test_trace_subfamily_adjunction_exhaustive():
    # |F[X]| = |F(X)| for every restriction of size <= 3 on subfamilies of [4]
    rng = random.Random(3)
    ambient = symmetric_group(4)
    cells = [(x, y) for x in range(1, 5) for y in range(1, 5)]
    for _ in range(25):
        f = family(4, rng.sample(list(ambient.members), rng.randint(1, 24)))
        for size in (1, 2, 3):
            for restriction in itertools.combinations(cells, size):
                assert len(subfamily_containing(f, restriction)) == len(trace(f, restriction))
                if not is_partial_permutation(restriction):
                    assert len(trace(f, restriction)) == 0


def test_enumerate_all_sizes():
    assert len(symmetric_group(4)) == 24
    assert len(enumerate_family(1)) == 1


def test_enumerate_derangements_pinned():
    assert derangements(3).members == ((2, 3, 1), (3, 1, 2))
    assert len(derangements(1)) == 0


def test_enumerate_double_derangements_vs_permanent():
    sigma = (2, 1, 4, 3)
    assert len(double_derangements(4, sigma)) == double_derangement_count(4, sigma)
    for p in double_derangements(4, sigma):
        assert is_derangement(p) and not intersects(p, sigma)


def test_enumerate_cap():
    with pytest.raises(ValueError):
        enumerate_family(ENUMERATION_CAP + 1)
    with pytest.raises(ValueError):
        enumerate_family(0)


def test_enumerate_bad_kind_and_missing_sigma():
    with pytest.raises(ValueError):
        enumerate_family(3, "everything")
    with pytest.raises(ValueError):
        enumerate_family(3, "double_derangements")


def test_family_set_operations():
    f = symmetric_group(3)
    g = family(3, [(1, 2, 3), (2, 3, 1)])
    assert g.issubset(f)
    assert len(f.difference(g)) == 4
    assert f.union(g) == f


def test_set_matching_number_basics():
    assert set_matching_number([]) == 0
    assert set_matching_number([frozenset({1}), frozenset({2}), frozenset({1, 2})]) == 2
    # the empty set is disjoint from everything
    assert set_matching_number([frozenset(), frozenset({1}), frozenset({1, 2})]) == 2


def test_set_matching_number_vs_graphs():
    fam = derangements(4)
    assert set_matching_number(fam.graphs()) == 3
