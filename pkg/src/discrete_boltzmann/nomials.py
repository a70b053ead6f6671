"""N-nomial coefficients by four independent routes.

C_N(K, i) counts the length-K sequences over {0, ..., N-1} whose entries
sum to i.  The binomial coefficients are the N=2 column of this family,
the trinomial and quadrinomial triangles the N=3 and N=4 columns.  The
four routes here (direct sequence enumeration, summing multiset
coefficients, the memoized recursion, and the multichoose closed form
for i < N) agree wherever their preconditions overlap; tests and the
verification sweep hold them against each other.
"""

from __future__ import annotations

from typing import Iterator

from .multisets import (
    coefficient,
    enumerate_multisets_with_sum,
    multichoose,
)

__all__ = [
    "nomial",
    "nomial_enum_sequences",
    "nomial_via_multisets",
    "nomial_recursive",
    "nomial_closed_form",
    "nomial_prefix_sum",
    "polynomial_expand",
    "vandermonde_check",
    "NomialTable",
]

DEFAULT_BUDGET = 10_000_000


def _validate(n: int, k: int, i: int) -> None:
    if n < 1:
        raise ValueError("need at least one level (N >= 1)")
    if k < 0:
        raise ValueError("sequence length K must be a natural")
    if not 0 <= i <= (n - 1) * k:
        raise ValueError(f"sum {i} out of range [0, {(n - 1) * k}] for N={n}, K={k}")


def nomial_enum_sequences(n: int, k: int, i: int, budget: int = DEFAULT_BUDGET) -> int:
    """Count sequences directly from the definition.

    Brute force over all N^K sequences; kept deliberately naive as the
    independent oracle for the other routes.  Refuses to enumerate more
    than ``budget`` sequences.
    """
    _validate(n, k, i)
    if n ** k > budget:
        raise ValueError(f"enumeration of {n}**{k} sequences exceeds budget {budget}")
    count = 0
    for v in _sequences(n, k):
        if sum(v) == i:
            count += 1
    return count


def _sequences(n: int, k: int) -> Iterator[tuple[int, ...]]:
    import itertools
    return itertools.product(range(n), repeat=k)


def nomial_via_multisets(n: int, k: int, i: int) -> int:
    """Sum of multiset coefficients over the size-k, sum-i configurations."""
    _validate(n, k, i)
    return sum(coefficient(phi) for phi in enumerate_multisets_with_sum(n, k, i))


def nomial_recursive(n: int, k: int, i: int) -> int:
    """The collect recursion, shared through a dense (size, level) table.

    One sequence position at a time absorbs part of the remaining level
    total: collect(size, level) sums collect(size-1, level-j) over the
    admissible next entries j < min(level+1, N).  The table is evaluated
    in increasing size order (so no recursion depth limit applies) and
    trimmed to levels <= i; impossible cells hold 0.  The table is per
    call, so concurrent use needs no locks.
    """
    _validate(n, k, i)
    row = [1]  # size 0 reaches exactly level 0
    for size in range(1, k + 1):
        width = min(i, (n - 1) * size)
        prev = row
        row = [0] * (width + 1)
        for level in range(width + 1):
            lo = max(0, level - (n - 1))
            hi = min(level, len(prev) - 1)
            row[level] = sum(prev[lo:hi + 1])
    return row[i] if i < len(row) else 0


def nomial_closed_form(n: int, k: int, i: int) -> int:
    """For i < N the level bound never bites and C_N(K, i) = multichoose(K, i)."""
    _validate(n, k, i)
    if i >= n:
        raise ValueError(f"closed form needs i < N, got i={i}, N={n}")
    if k < 1:
        raise ValueError("closed form needs K >= 1")
    return multichoose(k, i)


def nomial(n: int, k: int, i: int) -> int:
    """C_N(K, i) via the cheapest applicable route.

    Dispatches to the multichoose closed form when i < N, otherwise to
    the memoized recursion.  Never 0 for valid parameters.
    """
    _validate(n, k, i)
    if k >= 1 and i < n:
        return multichoose(k, i)
    return nomial_recursive(n, k, i)


def nomial_prefix_sum(n: int, k: int, bound: int) -> int:
    """sum_{i < bound} C_N(K, i), which equals (bound/K) * multichoose(K, bound).

    Both sides are computed and compared; a mismatch signals an
    implementation bug and raises.  Requires K >= 1 and 0 <= bound <= N,
    where the right-hand side is independent of N.
    """
    if k < 1:
        raise ValueError("prefix sum needs K >= 1")
    if not 0 <= bound <= n:
        raise ValueError(f"bound {bound} out of range [0, {n}]")
    lhs = sum(nomial(n, k, i) for i in range(bound))
    scaled = bound * multichoose(k, bound)
    if scaled % k:
        raise ArithmeticError(f"prefix-sum closed form not integral at N={n}, K={k}, n={bound}")
    rhs = scaled // k
    if lhs != rhs:
        raise ArithmeticError(
            f"prefix-sum identity violated at N={n}, K={k}, n={bound}: {lhs} != {rhs}")
    return lhs


def _convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for p, x in enumerate(a):
        if x:
            for q, y in enumerate(b):
                out[p + q] += x * y
    return out


def polynomial_expand(n: int, k: int) -> list[int]:
    """Exact integer coefficients of (1 + x + ... + x^(N-1))^K.

    The coefficient of x^i is C_N(K, i); this is the generating-function
    route, computed by repeated convolution.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    row = [1]
    base = [1] * n
    for _ in range(k):
        row = _convolve(row, base)
    return row


def vandermonde_check(n: int, k1: int, k2: int, i: int) -> bool:
    """Does C_N(K1+K2, i) split as the convolution over i1 + i2 = i?"""
    if k1 < 0 or k2 < 0:
        raise ValueError("lengths must be naturals")
    _validate(n, k1 + k2, i)
    lo = max(0, i - (n - 1) * k2)
    hi = min((n - 1) * k1, i)
    split = sum(nomial(n, k1, i1) * nomial(n, k2, i - i1) for i1 in range(lo, hi + 1))
    return nomial(n, k1 + k2, i) == split


class NomialTable:
    """Cached rows C_N(K, 0..(N-1)K) for K = 0..K_max.

    Row K has (N-1)*K + 1 entries, is palindromic, and sums to N^K;
    rows are built once by convolution and shared read-only afterwards.
    """

    def __init__(self, n: int, k_max: int):
        if n < 1 or k_max < 0:
            raise ValueError("need n >= 1 and k_max >= 0")
        self._n = n
        self._k_max = k_max
        rows = [[1]]
        base = [1] * n
        for _ in range(k_max):
            rows.append(_convolve(rows[-1], base))
        self._rows = rows

    @property
    def n(self) -> int:
        return self._n

    @property
    def k_max(self) -> int:
        return self._k_max

    @property
    def rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def row(self, k: int) -> list[int]:
        if not 0 <= k <= self._k_max:
            raise ValueError(f"row {k} not in table (K_max={self._k_max})")
        return list(self._rows[k])

    def value(self, k: int, i: int) -> int:
        row = self._rows[k] if 0 <= k <= self._k_max else None
        if row is None or not 0 <= i < len(row):
            raise ValueError(f"C({k}, {i}) not in table")
        return row[i]
