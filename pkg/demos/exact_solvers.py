#!/usr/bin/env python3
"""Exact matching/covering solvers, cross matchings, and the structural
classification of cross-matching-free pointed families."""

from fractions import Fraction

from permemc import (
    classify_cross_free_families,
    covering_number,
    cross_matching,
    derangement_star,
    derangements,
    family,
    make_hm,
    matching_number,
    pointed_derangement_count,
    star_union_slack_sides,
    support_union_bound_sides,
    symmetric_group,
)

print("=== matching numbers with certificates ===")
nu, witness = matching_number(symmetric_group(4))
print(f"nu(Sigma_4) = {nu}; witness rows of a Latin square: {list(witness)}")
nu, witness = matching_number(derangements(4))
print(f"nu(D_4) = {nu}; witness: {list(witness)}")

print()
print("=== covering numbers with certificates ===")
tau, cover = covering_number(symmetric_group(3))
print(f"tau(Sigma_3) = {tau}; lexicographically least cover: {cover}")
hm = make_hm(4, (2, 1, 4, 3))
tau, cover = covering_number(hm)
print(f"tau of the pinned non-trivial family = {tau}; cover {cover}")

print()
print("=== cross matchings across pointed derangement stars ===")
f1 = derangement_star(4, (1, 2))
f2 = derangement_star(4, (2, 1))
print(f"representatives: {cross_matching([f1, f2])}")

single = family(4, [(2, 1, 4, 3)])
print(f"identical singletons: {cross_matching([single, single])}")

print()
print("=== classifying cross-matching-free systems ===")
cls = classify_cross_free_families([single, single], [(1, 2), (2, 1)])
print(f"two copies of the double swap: alternative = {cls.alternative}")
print(f"  droppable star indices: {cls.containment_witnesses}")
print(f"  union size {cls.union_size} vs (t - 1.01) d_n1 = {cls.size_bound}")

print()
print("=== inequality evaluators ===")
sides = support_union_bound_sides(symmetric_group(4), [frozenset({(1, 1), (2, 2)})], Fraction(1, 2), 2)
print(
    f"one 2-cell support over Sigma_4: |A[S]| = {sides.lhs} vs "
    f"singleton-union + eps(s-1-l)max-star = {sides.rhs} (maximal: {sides.maximal})"
)
d5 = derangements(5)
sides = star_union_slack_sides(family(5, [(2, 1, 4, 5, 3)]), d5, 3)
print(
    f"best 2-cell union inside D_5: {sides.best_union_size} = 2 * {pointed_derangement_count(5)} "
    f"at {sides.best_cells}; slack n^-4 |X| = {sides.slack}"
)
