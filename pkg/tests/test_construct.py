"""Extremal constructors and the two-sided isomorphism action."""

import math
import random

import pytest

from permemc import (
    apply_isomorphism,
    derangement_star,
    derangements,
    family,
    identity,
    intersects,
    make_hm,
    make_hm_star_union,
    make_star,
    make_star_union,
    pointed_derangement_count,
    star_center_image,
    symmetric_group,
)
from permemc.construct import expected_hm_star_union_size


def test_star_size():
    for n in range(2, 7):
        assert len(make_star(n, (1, 1))) == math.factorial(n - 1)
    assert len(make_star(4, (1, 1))) == 6


def test_star_degenerate_n1():
    assert make_star(1, (1, 1)).members == ((1,),)


def test_star_cell_bounds():
    with pytest.raises(ValueError):
        make_star(3, (0, 1))
    with pytest.raises(ValueError):
        make_star(3, (1, 4))


def test_star_union_same_row_disjoint():
    union = make_star_union(5, [(1, 1), (1, 2)])
    assert len(union.family) == 48
    assert union.pairwise_disjoint


def test_star_union_general_position_not_disjoint():
    union = make_star_union(5, [(1, 1), (2, 2)])
    assert not union.pairwise_disjoint
    assert len(union.family) == 48 - math.factorial(3)


def test_star_union_duplicate_cells_rejected():
    with pytest.raises(ValueError):
        make_star_union(4, [(1, 1), (1, 1)])


def test_derangement_star_pinned():
    star = derangement_star(4, (1, 2))
    assert star.members == ((2, 1, 4, 3), (2, 3, 4, 1), (2, 4, 1, 3))
    assert len(star) == pointed_derangement_count(4)


def test_derangement_star_diagonal_rejected():
    with pytest.raises(ValueError):
        derangement_star(4, (2, 2))
    with pytest.raises(ValueError):
        make_star_union(4, [(1, 1)], derangement=True)


def test_derangement_star_union_sizes():
    union = make_star_union(5, [(1, 2), (1, 3)], derangement=True)
    assert len(union.family) == 2 * pointed_derangement_count(5)
    assert union.pairwise_disjoint


def test_hm_pinned_members():
    hm = make_hm(4, (2, 1, 4, 3))
    assert hm.members == ((1, 2, 4, 3), (1, 3, 4, 2), (1, 4, 2, 3), (2, 1, 4, 3))
    assert len(hm) == 4


def test_hm_contains_sigma_and_intersecting():
    rng = random.Random(5)
    for n in (4, 5):
        for _ in range(5):
            sigma = tuple(rng.sample(range(1, n + 1), n))
            if sigma[0] == 1:
                continue
            hm = make_hm(n, sigma)
            assert sigma in hm
            for p in hm:
                assert intersects(p, sigma)


def test_hm_size_identity():
    # (n-1)! - d_{n,1} + 1; the n = 5 instance is 24 - 11 + 1 = 14
    assert len(make_hm(5, (2, 1, 4, 5, 3))) == 14
    for n in (4, 5, 6):
        sigma = tuple([2, 1] + list(range(3, n + 1)))
        assert len(make_hm(n, sigma)) == expected_hm_star_union_size(n, 2)


def test_hm_rejects_fixed_one():
    with pytest.raises(ValueError):
        make_hm(4, (1, 2, 4, 3))


def test_hm_star_union_size():
    fam = make_hm_star_union(5, 3, (3, 1, 2, 4, 5))
    assert len(fam) == 2 * 24 - 11 + 1 == 38


def test_hm_star_union_reduces_to_hm():
    assert make_hm_star_union(4, 2, (2, 1, 4, 3)) == make_hm(4, (2, 1, 4, 3))


def test_hm_star_union_preconditions():
    with pytest.raises(ValueError):
        make_hm_star_union(5, 1, (2, 1, 4, 5, 3))
    with pytest.raises(ValueError):
        make_hm_star_union(5, 3, (2, 1, 4, 5, 3))  # sigma(1) = 2 inside [s-1]
    with pytest.raises(ValueError):
        make_hm_star_union(3, 5, (3, 1, 2))


def test_apply_isomorphism_identity():
    fam = family(4, [(2, 1, 4, 3), (1, 2, 3, 4)])
    assert apply_isomorphism(identity(4), fam, identity(4)) == fam


def test_apply_isomorphism_preserves_size():
    rng = random.Random(6)
    ambient = symmetric_group(4)
    for _ in range(20):
        fam = family(4, rng.sample(list(ambient.members), rng.randint(1, 20)))
        rho = tuple(rng.sample(range(1, 5), 4))
        pi = tuple(rng.sample(range(1, 5), 4))
        assert len(apply_isomorphism(rho, fam, pi)) == len(fam)


def test_apply_isomorphism_star_mapping():
    rng = random.Random(8)
    for n in (4, 5):
        for _ in range(10):
            rho = tuple(rng.sample(range(1, n + 1), n))
            pi = tuple(rng.sample(range(1, n + 1), n))
            cell = (rng.randint(1, n), rng.randint(1, n))
            image = apply_isomorphism(rho, make_star(n, cell), pi)
            assert image == make_star(n, star_center_image(rho, cell, pi))


def test_apply_isomorphism_preserves_derangement_star_structure():
    rho = (2, 3, 1, 4)
    pi = (1, 2, 3, 4)
    image = apply_isomorphism(rho, derangements(4), pi)
    assert len(image) == len(derangements(4))
