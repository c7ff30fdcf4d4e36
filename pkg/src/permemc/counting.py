"""Exact counting kernels: derangement numbers, permanents, and lower bounds.

Every count is an exact Python integer and every inequality is decided in
rational arithmetic; no floating point enters any comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Cell, Perm, is_partial_permutation, is_permutation

#: Caps keeping the exact permanents at interactive speeds.
BRUTE_CAP = 9
RYSER_CAP = 30

_PERM_CACHE: dict[int, list[tuple[int, ...]]] = {}


def derangement_count(n: int) -> int:
    """d_n by the recurrence d_n = (n-1)(d_{n-1} + d_{n-2}), d_0 = 1, d_1 = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 1, 0  # d_0, d_1
    if n == 0:
        return a
    for m in range(2, n + 1):
        a, b = b, (m - 1) * (b + a)
    return b


def derangement_count_inclusion_exclusion(n: int) -> int:
    """d_n = n! * sum_{i=0}^{n} (-1)^i / i!, evaluated in exact integers.

    The sum must start at i = 0: the complementary sum starting at i = 1
    counts the permutations that *do* have a fixed point.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 0
    term = math.factorial(n)  # n!/i! at i = 0
    for i in range(n + 1):
        total += term if i % 2 == 0 else -term
        term //= i + 1
    return total


def round_factorial_over_e(n: int) -> int:
    """Nearest integer to n!/e via the truncated alternating series.

    The partial sums of n! * sum (-1)^i/i! bracket n!/e ever more tightly;
    we extend the series until both bracket ends round to the same integer.
    No floating-point value of e is used.
    """
    if n < 1:
        raise ValueError("defined for n >= 1")
    nf = math.factorial(n)
    partial = Fraction(0)
    fact_i = 1
    i = 0
    while True:
        partial += Fraction((-1) ** i, fact_i)
        if i >= 1:
            lo, hi = sorted([nf * partial, nf * (partial + Fraction((-1) ** (i + 1), fact_i * (i + 1)))])
            rlo = (2 * lo + 1) // 2  # floor(x + 1/2)
            rhi = (2 * hi + 1) // 2
            if rlo == rhi:
                return int(rlo)
        i += 1
        fact_i *= i


def pointed_derangement_count(n: int) -> int:
    """d_{n,1} = d_{n-1} + d_{n-2}: derangements through one off-diagonal cell."""
    if n < 2:
        raise ValueError("defined for n >= 2")
    return derangement_count(n - 1) + derangement_count(n - 2)


@dataclass(frozen=True)
class ZeroOneMatrix:
    """A square matrix with entries in {0, 1}."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        norm = []
        for row in self.rows:
            row = tuple(int(v) for v in row)
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(v not in (0, 1) for v in row):
                raise ValueError("entries must be 0 or 1")
            norm.append(row)
        object.__setattr__(self, "rows", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.rows)


def _rows_of(matrix) -> list[tuple[int, ...]]:
    if isinstance(matrix, ZeroOneMatrix):
        return list(matrix.rows)
    return list(ZeroOneMatrix(tuple(tuple(r) for r in matrix)).rows)


def permanent_brute(matrix) -> int:
    """Permanent as the literal sum over all N! permutations (oracle path)."""
    rows = _rows_of(matrix)
    n = len(rows)
    if n > BRUTE_CAP:
        raise ValueError(f"brute permanent capped at N={BRUTE_CAP}")
    if n == 0:
        return 1
    if n <= 8:
        perms = _PERM_CACHE.get(n)
        if perms is None:
            perms = _PERM_CACHE[n] = list(itertools.permutations(range(n)))
    else:
        perms = itertools.permutations(range(n))
    total = 0
    for p in perms:
        prod = 1
        for i, j in enumerate(p):
            prod *= rows[i][j]
            if not prod:
                break
        total += prod
    return total


def permanent_ryser(matrix) -> int:
    """Permanent by Ryser's inclusion-exclusion with Gray-code updates.

    Column subsets are visited in Gray-code order so each step toggles a
    single column in the running row sums; exact big-integer arithmetic
    throughout.
    """
    rows = _rows_of(matrix)
    n = len(rows)
    if n > RYSER_CAP:
        raise ValueError(f"ryser permanent capped at N={RYSER_CAP}")
    if n == 0:
        return 1
    cols = [[rows[i][j] for i in range(n)] for j in range(n)]
    sums = [0] * n
    total = 0
    popcount = 0
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        bit = gray ^ prev_gray
        j = bit.bit_length() - 1
        col = cols[j]
        if gray & bit:
            popcount += 1
            for i in range(n):
                sums[i] += col[i]
        else:
            popcount -= 1
            for i in range(n):
                sums[i] -= col[i]
        prev_gray = gray
        prod = 1
        for s in sums:
            prod *= s
            if not prod:
                break
        if prod:
            total += prod if popcount % 2 == 0 else -prod
    # Ryser: perm(A) = (-1)^N * sum_S (-1)^|S| * prod_i sum_{j in S} a_ij.
    return total if n % 2 == 0 else -total


def permanent(matrix, method: str = "ryser") -> int:
    """Exact permanent of a 0/1 matrix; ``method`` is ``ryser`` or ``brute``."""
    if method == "ryser":
        return permanent_ryser(matrix)
    if method == "brute":
        return permanent_brute(matrix)
    raise ValueError(f"unknown permanent method: {method!r}")


def _reduced_forbidden_matrix(n: int, cells, forbidden) -> list[list[int]]:
    """Delete the rows/columns of the fixed cells; zero the forbidden map."""
    fixed_rows = {r for r, _ in cells}
    fixed_cols = {c for _, c in cells}
    rows = [r for r in range(1, n + 1) if r not in fixed_rows]
    cols = [c for c in range(1, n + 1) if c not in fixed_cols]
    return [[0 if c in forbidden(r) else 1 for c in cols] for r in rows]


def derangement_containment_count(n: int, cells) -> int:
    """Number of derangements of [n] whose graph contains the given cells.

    Zero when some cell sits on the diagonal.  Computed as the permanent of
    the reduced matrix that forbids the surviving diagonal.
    """
    cs = frozenset(cells)
    if not is_partial_permutation(cs):
        raise ValueError("cells do not form a partial permutation")
    if any(r == c for r, c in cs):
        return 0
    if n - len(cs) > RYSER_CAP:
        raise ValueError(f"reduced size {n - len(cs)} exceeds ryser cap {RYSER_CAP}")
    reduced = _reduced_forbidden_matrix(n, cs, lambda r: {r})
    return permanent_ryser(reduced)


def double_derangement_count(n: int, sigma: Perm, cells=()) -> int:
    """|D_{n, sigma-bar}(S)|: derangements disjoint from sigma containing S.

    After fixing the cells of S the corresponding rows and columns are
    deleted and each surviving row r forbids the columns {r, sigma(r)}; the
    count is the permanent of that reduced 0/1 matrix.  Returns 0 when S
    touches the diagonal or the graph of sigma.
    """
    sigma = tuple(sigma)
    if len(sigma) != n or not is_permutation(sigma):
        raise ValueError(f"sigma is not a permutation of [{n}]")
    cs = frozenset(cells)
    if not is_partial_permutation(cs):
        raise ValueError("cells do not form a partial permutation")
    if any(r == c or sigma[r - 1] == c for r, c in cs):
        return 0
    if n - len(cs) > RYSER_CAP:
        raise ValueError(f"reduced size {n - len(cs)} exceeds ryser cap {RYSER_CAP}")
    reduced = _reduced_forbidden_matrix(n, cs, lambda r: {r, sigma[r - 1]})
    return permanent_ryser(reduced)


def near_full_permanent_bound(n: int, case: str = "two_regular") -> Fraction:
    """Exact rational lower bound for permanents of nearly-full 0/1 matrices.

    For an N x N matrix whose rows and columns each carry at least N-2 ones,
    the zero pattern saturates to either a 2-regular bipartite graph or one
    with a single adjacent degree-1 pair; the Egorychev-Falikman theorem
    applied to the saturated matrix gives

        two_regular:    (1 - 2/N)^N * N!
        one_deficient:  (N-1)/N * (1 - 2/(N-1))^(N-1) * N!
    """
    if n < 4:
        raise ValueError("defined for N >= 4")
    nf = math.factorial(n)
    if case == "two_regular":
        return Fraction(n - 2, n) ** n * nf
    if case == "one_deficient":
        return Fraction(n - 1, n) * Fraction(n - 3, n - 1) ** (n - 1) * nf
    raise ValueError(f"unknown case: {case!r}")


@dataclass(frozen=True)
class NearFullCheck:
    case: str
    bound: Fraction
    permanent: int
    holds: bool
    saturated_zeros: tuple[Cell, ...]


def near_full_permanent_check(matrix) -> NearFullCheck:
    """Classify a near-full matrix's zero graph and verify the lower bound.

    The input must have at least N-2 ones in every row and column.  The zero
    graph is saturated (zeros added while keeping both-side degrees <= 2,
    which can only decrease the permanent) purely for classification; the
    bound is then checked against the exact permanent of the *input*.
    """
    rows = _rows_of(matrix)
    n = len(rows)
    if n < 4:
        raise ValueError("defined for N >= 4")
    row_deg = [row.count(0) for row in rows]
    col_deg = [sum(1 - rows[i][j] for i in range(n)) for j in range(n)]
    if max(row_deg + col_deg) > 2:
        raise ValueError("some row or column has fewer than N-2 ones")

    zeros = {(i + 1, j + 1) for i in range(n) for j in range(n) if rows[i][j] == 0}
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if row_deg[i] >= 2:
                continue
            for j in range(n):
                if col_deg[j] < 2 and (i + 1, j + 1) not in zeros:
                    zeros.add((i + 1, j + 1))
                    row_deg[i] += 1
                    col_deg[j] += 1
                    changed = True
                    if row_deg[i] >= 2:
                        break
    if all(d == 2 for d in row_deg) and all(d == 2 for d in col_deg):
        case = "two_regular"
    else:
        # Maximality forces exactly one degree-1 vertex per side, adjacent.
        ones_r = [i for i, d in enumerate(row_deg) if d == 1]
        ones_c = [j for j, d in enumerate(col_deg) if d == 1]
        if len(ones_r) != 1 or len(ones_c) != 1 or (ones_r[0] + 1, ones_c[0] + 1) not in zeros:
            raise AssertionError("saturation did not reach a recognized shape")
        case = "one_deficient"
    bound = near_full_permanent_bound(n, case)
    value = permanent_ryser(rows)
    return NearFullCheck(case, bound, value, Fraction(value) >= bound, tuple(sorted(zeros)))


def all_ones_matrix(n: int) -> list[list[int]]:
    return [[1] * n for _ in range(n)]


def complement_of_identity(n: int) -> list[list[int]]:
    """J - I: ones everywhere off the diagonal (permanent = d_n)."""
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def cycle_cover_zero_matrix(parts: Sequence[int]) -> list[list[int]]:
    """Canonical matrix whose zero graph is 2-regular with given cycle parts.

    Each part k >= 2 contributes a k x k diagonal block with zeros on its
    identity and on its forward cyclic shift.
    """
    if any(k < 2 for k in parts):
        raise ValueError("cycle parts must be >= 2")
    n = sum(parts)
    rows = [[1] * n for _ in range(n)]
    offset = 0
    for k in parts:
        for i in range(k):
            rows[offset + i][offset + i] = 0
            rows[offset + i][offset + (i + 1) % k] = 0
        offset += k
    return rows
