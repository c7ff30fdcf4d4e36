#!/usr/bin/env python3
"""The extremal families: star unions, the pinned non-trivial family, and
their exact sizes, matching numbers, and covering numbers.

A family with no s pairwise disjoint members has size at most
(s-1)(n-1)!, achieved by unions of s-1 stars sharing a row or column; the
best family that additionally needs s cells to cover is the union of s-2
stars with a pinned intersecting block, of size (s-1)(n-1)! - d_{n,1} + 1.
"""

import math

from permemc import (
    coset_certificate,
    covering_number,
    derangement_star,
    make_hm,
    make_hm_star_union,
    make_star,
    make_star_union,
    matching_number,
    pointed_derangement_count,
    symmetric_group,
)

n = 5
print(f"=== stars and star unions over [{n}] ===")
star = make_star(n, (1, 1))
print(f"star at (1,1): size {len(star)} = (n-1)! = {math.factorial(n - 1)}, nu = {matching_number(star)[0]}")

for cells in ([(1, 1), (1, 2)], [(1, 1), (2, 2)]):
    union = make_star_union(n, cells)
    nu, _ = matching_number(union.family)
    print(f"union of stars at {cells}: size {len(union.family)}, pairwise disjoint: {union.pairwise_disjoint}, nu = {nu}")

print()
print("=== derangement stars ===")
dstar = derangement_star(4, (1, 2))
print(f"derangements of [4] through (1,2): {list(dstar.members)} (d_41 = {pointed_derangement_count(4)})")
dunion = make_star_union(5, [(1, 2), (1, 3)], derangement=True)
print(f"two disjoint derangement stars over [5]: size {len(dunion.family)} = 2 * {pointed_derangement_count(5)}")

print()
print("=== the pinned non-trivial family ===")
hm = make_hm(4, (2, 1, 4, 3))
nu, _ = matching_number(hm)
tau, cover = covering_number(hm)
print(f"members: {list(hm.members)}")
print(f"size {len(hm)} = 3! - d_41 + 1, nu = {nu}, tau = {tau} with cover {cover}")

print()
print("=== glued family: s-2 stars + pinned block, n = 5 ===")
for s, sigma in ((2, (2, 1, 4, 5, 3)), (3, (3, 1, 2, 4, 5))):
    fam = make_hm_star_union(5, s, sigma)
    nu, _ = matching_number(fam)
    tau, _ = covering_number(fam)
    expected = (s - 1) * 24 - 11 + 1
    print(f"s={s}: size {len(fam)} (expected {expected}), nu = {nu} = s-1, tau = {tau} = s")

print()
print("=== the coset certificate behind the (s-1)(n-1)! bound ===")
union = make_star_union(5, [(1, 1), (1, 2)]).family
cert = coset_certificate(union, s=3)
print(
    f"two disjoint stars in Sigma_5: {cert.class_count} cosets, max load {cert.max_load}, "
    f"|F| = {cert.family_size} <= (s-1)(n-1)! = {cert.bound}: certified = {cert.certified}"
)
cert = coset_certificate(symmetric_group(4), s=4)
print(f"all of Sigma_4 with s=4: max coset load {cert.max_load} > s-1, certified = {cert.certified}")
