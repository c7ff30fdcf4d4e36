"""Permutations of [n], partial permutations, and finite families thereof.

A permutation is stored as its image sequence, a tuple ``(p(1), ..., p(n))``
with 1-indexed values.  Its *graph* is the cell set ``{(i, p(i))}`` inside the
``[n] x [n]`` grid, so families of permutations can be handled as families of
n-element cell sets: two permutations intersect exactly when their graphs
share a cell.

A *partial permutation* is a cell set with pairwise distinct rows and
pairwise distinct columns, i.e. a subset of some full permutation's graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Cell = tuple[int, int]
PartialPerm = frozenset  # frozenset[Cell]

#: Full enumeration of all n! permutations is refused above this n.
ENUMERATION_CAP = 10


class DimensionMismatch(ValueError):
    """Operands live over different ground sets [n]."""


def is_permutation(image: Sequence[int]) -> bool:
    """Check that ``image`` is a bijection of [n] with n = len(image).

    >>> is_permutation((2, 3, 1))
    True
    >>> is_permutation((1, 1, 3))
    False
    """
    n = len(image)
    return sorted(image) == list(range(1, n + 1))


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(a: Perm, b: Perm) -> Perm:
    """Composition a∘b, acting right-to-left: (a∘b)(i) = a(b(i))."""
    if len(a) != len(b):
        raise DimensionMismatch(f"cannot compose permutations of [{len(a)}] and [{len(b)}]")
    return tuple(a[j - 1] for j in b)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def intersects(a: Perm, b: Perm) -> bool:
    """True iff a(i) = b(i) for some i, i.e. the graphs share a cell."""
    if len(a) != len(b):
        raise DimensionMismatch(f"cannot compare permutations of [{len(a)}] and [{len(b)}]")
    return any(x == y for x, y in zip(a, b))


def graph(p: Perm) -> PartialPerm:
    """The cell set {(i, p(i)) : i in [n]}."""
    return frozenset((i + 1, v) for i, v in enumerate(p))


def contains_cells(p: Perm, cells: Iterable[Cell]) -> bool:
    """True iff every cell (r, c) satisfies p(r) = c."""
    return all(1 <= r <= len(p) and p[r - 1] == c for r, c in cells)


def is_partial_permutation(cells: Iterable[Cell]) -> bool:
    """Rows pairwise distinct and columns pairwise distinct."""
    cells = list(cells)
    rows = {r for r, _ in cells}
    cols = {c for _, c in cells}
    return len(rows) == len(cells) and len(cols) == len(cells)


def partial_permutation(cells: Iterable[Cell], n: int | None = None) -> PartialPerm:
    """Validate and freeze a cell set into a partial permutation."""
    cs = frozenset((int(r), int(c)) for r, c in cells)
    if not is_partial_permutation(cs):
        raise ValueError(f"not a partial permutation (row or column clash): {sorted(cs)}")
    if n is not None:
        for r, c in cs:
            if not (1 <= r <= n and 1 <= c <= n):
                raise ValueError(f"cell ({r},{c}) outside [{n}]^2")
    return cs


def sorted_cells(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    """Row-major canonical order."""
    return tuple(sorted(cells))


@dataclass(frozen=True)
class Family:
    """A finite set of permutations sharing one n.

    Members are kept deduplicated in lexicographic order of image sequences,
    so equal families compare equal regardless of construction order.  The
    optional ``label`` names symbolic constructions (star unions etc.) and is
    ignored by comparison: families are equal by extension.
    """

    n: int
    members: tuple[Perm, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        seen = sorted(set(tuple(int(v) for v in m) for m in self.members))
        for m in seen:
            if len(m) != self.n or not is_permutation(m):
                raise ValueError(f"not a permutation of [{self.n}]: {m}")
        object.__setattr__(self, "members", tuple(seen))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.members)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.members)

    def graphs(self) -> list[PartialPerm]:
        return [graph(p) for p in self.members]

    def restrict(self, keep: Iterable[Perm]) -> "Family":
        keep = set(tuple(p) for p in keep)
        return Family(self.n, tuple(p for p in self.members if p in keep))

    def difference(self, other: "Family") -> "Family":
        drop = set(other.members)
        return Family(self.n, tuple(p for p in self.members if p not in drop))

    def union(self, other: "Family") -> "Family":
        if self.n != other.n:
            raise DimensionMismatch("families over different [n]")
        return Family(self.n, self.members + other.members)

    def issubset(self, other: "Family") -> bool:
        return self.n == other.n and set(self.members) <= set(other.members)


def family(n: int, members: Iterable[Sequence[int]], label: str | None = None) -> Family:
    return Family(n, tuple(tuple(m) for m in members), label)


def trace(fam: Family, cells: Iterable[Cell]) -> tuple[PartialPerm, ...]:
    """Residues {graph(p) \\ X : p in F, X ⊆ graph(p)} for X = ``cells``.

    Distinct members through X leave distinct residues, so the result size
    equals the number of members containing X.  Empty when no member
    contains X (in particular whenever X is not a partial permutation).
    """
    cs = frozenset(cells)
    out = [graph(p) - cs for p in fam.members if contains_cells(p, cs)]
    return tuple(sorted(out, key=sorted))


def subfamily_containing(fam: Family, cells: Iterable[Cell]) -> Family:
    """F[X]: the members whose graphs contain every cell of X."""
    cs = frozenset(cells)
    return Family(fam.n, tuple(p for p in fam.members if contains_cells(p, cs)))


def subfamily_containing_any(fam: Family, cell_sets: Iterable[Iterable[Cell]]) -> Family:
    """F[S] = union of F[A] over A in S."""
    frozen = [frozenset(cs) for cs in cell_sets]
    return Family(
        fam.n,
        tuple(p for p in fam.members if any(contains_cells(p, cs) for cs in frozen)),
    )


def _check_cap(n: int) -> None:
    if n > ENUMERATION_CAP:
        raise ValueError(f"full enumeration refused for n={n} (cap {ENUMERATION_CAP})")
    if n < 1:
        raise ValueError("n must be a positive integer")


def is_derangement(p: Perm) -> bool:
    return all(v != i + 1 for i, v in enumerate(p))


def enumerate_family(n: int, kind: str = "all", sigma: Perm | None = None) -> Family:
    """Enumerate Σ_n, its derangements, or the derangements disjoint from sigma.

    ``kind`` is one of ``all``, ``derangements``, ``double_derangements``;
    the last requires ``sigma``.  n is capped at ``ENUMERATION_CAP``.
    """
    _check_cap(n)
    perms = itertools.permutations(range(1, n + 1))
    if kind == "all":
        return Family(n, tuple(perms), label=f"sigma_{n}")
    if kind == "derangements":
        return Family(n, tuple(p for p in perms if is_derangement(p)), label=f"derangements_{n}")
    if kind == "double_derangements":
        if sigma is None:
            raise ValueError("kind 'double_derangements' needs sigma")
        sigma = tuple(sigma)
        if len(sigma) != n or not is_permutation(sigma):
            raise ValueError(f"sigma is not a permutation of [{n}]")
        members = tuple(
            p for p in perms if is_derangement(p) and not any(x == y for x, y in zip(p, sigma))
        )
        return Family(n, members, label=f"double_derangements_{n}")
    raise ValueError(f"unknown enumeration kind: {kind!r}")


def symmetric_group(n: int) -> Family:
    return enumerate_family(n, "all")


def derangements(n: int) -> Family:
    return enumerate_family(n, "derangements")


def double_derangements(n: int, sigma: Perm) -> Family:
    return enumerate_family(n, "double_derangements", sigma)


def set_matching_number(sets: Sequence[Iterable]) -> int:
    """Largest number of pairwise disjoint sets in the collection.

    Works on any finite sets (cell sets, permutation graphs); the empty set
    is disjoint from everything.  Exhaustive DFS, intended for small inputs.
    """
    frozen = [frozenset(s) for s in sets]
    best = 0

    def rec(i: int, chosen_union: frozenset, count: int):
        nonlocal best
        if count > best:
            best = count
        if count + (len(frozen) - i) <= best:
            return
        for j in range(i, len(frozen)):
            if not (frozen[j] & chosen_union):
                rec(j + 1, chosen_union | frozen[j], count + 1)

    rec(0, frozenset(), 0)
    return best
