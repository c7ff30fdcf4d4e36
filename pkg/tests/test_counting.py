"""Counting kernels: derangement numbers, permanents, and exact bounds."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from permemc import (
    ZeroOneMatrix,
    complement_of_identity,
    cycle_cover_zero_matrix,
    derangement_containment_count,
    derangement_count,
    derangement_count_inclusion_exclusion,
    derangements,
    double_derangement_count,
    double_derangements,
    graph,
    near_full_permanent_bound,
    near_full_permanent_check,
    permanent,
    permanent_brute,
    permanent_ryser,
    pointed_derangement_count,
    round_factorial_over_e,
)
from permemc.counting import BRUTE_CAP, RYSER_CAP, all_ones_matrix

# Derangement numbers d_0..d_8, frozen from brute-force enumeration.
D_TABLE = [1, 0, 1, 2, 9, 44, 265, 1854, 14833]


def test_derangement_base_cases():
    assert derangement_count(0) == 1
    assert derangement_count(1) == 0


def test_derangement_table():
    assert [derangement_count(n) for n in range(9)] == D_TABLE


def test_derangement_negative_rejected():
    with pytest.raises(ValueError):
        derangement_count(-1)


def test_derangement_closed_forms_agree():
    for n in range(0, 41):
        rec = derangement_count(n)
        assert derangement_count_inclusion_exclusion(n) == rec
        if n >= 1:
            assert round_factorial_over_e(n) == rec


def test_derangement_enumeration_agrees():
    for n in range(1, 9):
        assert len(derangements(n)) == derangement_count(n)


def test_pointed_derangement_values():
    # d_{n,1} = d_{n-1} + d_{n-2}; 3 and 11 frozen from enumerating D_4, D_5
    assert pointed_derangement_count(3) == 1
    assert pointed_derangement_count(4) == 3
    assert pointed_derangement_count(5) == 11
    with pytest.raises(ValueError):
        pointed_derangement_count(1)


def test_pointed_derangement_cell_independent():
    for n in range(2, 8):
        counts = {}
        for p in derangements(n).members:
            for cell in graph(p):
                counts[cell] = counts.get(cell, 0) + 1
        expected = pointed_derangement_count(n)
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                if x != y:
                    assert counts.get((x, y), 0) == expected


def test_permanent_identity_and_all_ones():
    eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert permanent(eye, "ryser") == 1
    assert permanent(eye, "brute") == 1
    assert permanent(all_ones_matrix(4), "ryser") == math.factorial(4)


def test_permanent_complement_identity_is_derangement_count():
    for n in range(2, 9):
        assert permanent_ryser(complement_of_identity(n)) == derangement_count(n)


def test_permanent_ryser_vs_brute_random():
    rng = random.Random(7)
    for n in range(1, 8):
        for _ in range(30):
            rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            assert permanent_ryser(rows) == permanent_brute(rows)


def _dp_permanent(rows):
    """Independent oracle: row-by-row DP over column subsets."""
    n = len(rows)
    f = [0] * (1 << n)
    f[0] = 1
    for mask in range(1, 1 << n):
        i = mask.bit_count() - 1
        total = 0
        m = mask
        while m:
            lsb = m & -m
            j = lsb.bit_length() - 1
            m ^= lsb
            if rows[i][j]:
                total += f[mask ^ lsb]
        f[mask] = total
    return f[(1 << n) - 1]


def test_permanent_ryser_vs_dp_oracle_midrange():
    # covers the N = 10..12 range the brute oracle cannot reach
    rng = random.Random(17)
    for n in (10, 11, 12):
        assert permanent_ryser(complement_of_identity(n)) == _dp_permanent(complement_of_identity(n))
        for _ in range(5):
            rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            assert permanent_ryser(rows) == _dp_permanent(rows)


def test_permanent_caps():
    with pytest.raises(ValueError):
        permanent_brute(all_ones_matrix(BRUTE_CAP + 1))
    with pytest.raises(ValueError):
        permanent_ryser(all_ones_matrix(RYSER_CAP + 1))
    with pytest.raises(ValueError):
        permanent(all_ones_matrix(3), "guess")


def test_zero_one_matrix_validation():
    with pytest.raises(ValueError):
        ZeroOneMatrix(((0, 1), (1,)))
    with pytest.raises(ValueError):
        ZeroOneMatrix(((0, 2), (1, 0)))
    assert ZeroOneMatrix(((1, 0), (0, 1))).n == 2


def test_derangement_containment_count_vs_enumeration():
    for n in (3, 4, 5):
        ders = derangements(n)
        for cells in ([(1, 2)], [(1, 2), (2, 3)], [(2, 1), (3, 4)] if n >= 4 else [(1, 3)]):
            if any(c > n for cell in cells for c in cell):
                continue
            brute = sum(
                1
                for p in ders.members
                if all(p[r - 1] == c for r, c in cells)
            )
            assert derangement_containment_count(n, cells) == brute


def test_derangement_containment_diagonal_is_zero():
    assert derangement_containment_count(4, [(2, 2)]) == 0


def test_double_derangement_pinned():
    assert double_derangement_count(4, (2, 1, 4, 3)) == 4


def test_double_derangement_conflicts():
    sigma = (2, 1, 4, 3)
    assert double_derangement_count(4, sigma, [(1, 1)]) == 0  # diagonal cell
    assert double_derangement_count(4, sigma, [(1, 2)]) == 0  # sigma cell


def test_double_derangement_vs_enumeration():
    rng = random.Random(11)
    for n in (3, 4, 5, 6):
        for _ in range(5):
            sigma = tuple(rng.sample(range(1, n + 1), n))
            dd = double_derangements(n, sigma)
            assert len(dd) == double_derangement_count(n, sigma)
            cell_pool = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1)]
            cells = rng.sample(cell_pool, 2)
            if not all(r != c for r, c in cells):
                continue
            rows = {r for r, _ in cells}
            cols = {c for _, c in cells}
            if len(rows) < 2 or len(cols) < 2:
                continue
            brute = sum(1 for p in dd.members if all(p[r - 1] == c for r, c in cells))
            assert double_derangement_count(n, sigma, cells) == brute


def test_double_derangement_monotone_sanity():
    for n in range(3, 8):
        sigma = tuple(list(range(2, n + 1)) + [1])
        for cells in ([], [(1, 3)] if n >= 3 else []):
            if cells and cells[0][1] == sigma[0]:
                continue
            assert double_derangement_count(n, sigma, cells) <= derangement_count(n - len(cells))


def test_near_full_bound_values():
    assert near_full_permanent_bound(6, "two_regular") == Fraction(5120, 81)
    expected = Fraction(5, 6) * Fraction(3, 5) ** 5 * math.factorial(6)
    assert near_full_permanent_bound(6, "one_deficient") == expected
    with pytest.raises(ValueError):
        near_full_permanent_bound(3)
    with pytest.raises(ValueError):
        near_full_permanent_bound(6, "mystery")


def test_near_full_threshold_at_400():
    # (1 - 2/N)^N N! > N!/7.5 at N = 400, checked in exact rationals
    assert Fraction(398, 400) ** 400 > Fraction(2, 15)


def test_near_full_check_menage():
    chk = near_full_permanent_check(cycle_cover_zero_matrix([6]))
    assert chk.case == "two_regular"
    assert chk.permanent == 80
    assert chk.bound == Fraction(5120, 81)
    assert chk.holds


def test_near_full_check_all_ones():
    chk = near_full_permanent_check(all_ones_matrix(5))
    assert chk.holds
    assert chk.permanent == math.factorial(5)


def test_near_full_check_one_deficient_shape():
    # a single zero saturates into the adjacent degree-1 pair shape
    rows = [[1] * 5 for _ in range(5)]
    rows[0][0] = 0
    chk = near_full_permanent_check(rows)
    assert chk.case in ("two_regular", "one_deficient")
    assert chk.holds


def test_near_full_check_rejects_sparse_rows():
    rows = [[0, 0, 0, 1], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]]
    with pytest.raises(ValueError):
        near_full_permanent_check(rows)


def test_two_regular_cycle_covers_meet_bound():
    def partitions(n, minimum=2):
        if n == 0:
            yield ()
            return
        for first in range(minimum, n + 1):
            rest = n - first
            if rest == 0 or rest >= first:
                for tail in partitions(rest, first):
                    yield (first,) + tail

    for n in range(4, 11):
        for parts in partitions(n):
            rows = cycle_cover_zero_matrix(parts)
            value = permanent_ryser(rows)
            assert Fraction(value) >= near_full_permanent_bound(n, "two_regular"), (n, parts)


def test_double_derangement_meets_near_full_bound():
    # sigma a derangement: the zero graph (identity + sigma) is 2-regular,
    # so the count is bounded below by (1 - 2/n)^n n!; exact for 6 <= n <= 12
    rng = random.Random(29)
    for n in range(6, 13):
        ders = [tuple(list(range(2, n + 1)) + [1])]  # full cycle
        swap = list(range(1, n + 1))
        for i in range(0, n - 1, 2):
            swap[i], swap[i + 1] = swap[i + 1], swap[i]
        if all(swap[i] != i + 1 for i in range(n)):
            ders.append(tuple(swap))
        for sigma in ders:
            count = double_derangement_count(n, sigma)
            assert Fraction(count) >= near_full_permanent_bound(n, "two_regular")


def test_derangement_trace_inequality_has_equality_witnesses():
    """3|D_n(S)| >= (n-|S|)! always at this scale, with equality exactly at
    the empty restriction for n = 3 and the transposition pairs for n = 5."""
    equalities = set()
    for n in range(2, 7):
        cells = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1) if x != y]
        cands = [()] + [(c,) for c in cells]
        cands += [
            tuple(sorted(pair))
            for pair in itertools.combinations(cells, 2)
            if pair[0][0] != pair[1][0] and pair[0][1] != pair[1][1]
        ]
        for cand in cands:
            cnt = derangement_containment_count(n, cand)
            if cnt == 0:
                continue
            target = math.factorial(n - len(cand))
            assert 3 * cnt >= target
            if 3 * cnt == target:
                equalities.add((n, len(cand)))
    assert equalities == {(3, 0), (5, 2)}
