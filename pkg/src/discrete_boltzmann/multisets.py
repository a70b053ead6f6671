"""Exact multisets over finite ground sets.

A multiset assigns a natural multiplicity to each label of a fixed,
ordered ground set.  Everything here is pure, immutable, and computed
with arbitrary-precision integers; no floating point enters this module.

Ket text form
-------------
Multisets print and parse as ``3|0> + 1|3>``: each term is a natural
multiplicity, a bar, the label, and a closing angle bracket, with terms
joined by `` + `` in ground-set order.  The empty multiset is ``0``.
Labels are either naturals (energy levels) or identifiers (colours).
Repeated labels add up and zero-multiplicity terms are dropped, so the
parser accepts any order.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Mapping, Sequence, Union

Label = Union[int, str]

__all__ = [
    "GroundSet",
    "Multiset",
    "levels",
    "empty",
    "unit",
    "size",
    "coefficient",
    "som",
    "accumulate",
    "enumerate_multisets",
    "enumerate_multisets_with_sum",
    "reverse",
    "leq",
    "binom",
    "multichoose",
    "format_multiset",
    "parse_multiset",
]


def binom(n: int, i: int) -> int:
    """Number of size-``i`` subsets of an ``n``-element set: n!/((n-i)!*i!)."""
    if n < 0 or i < 0 or i > n:
        raise ValueError(f"binom({n}, {i}) is undefined")
    return math.comb(n, i)


def multichoose(m: int, j: int) -> int:
    """Number of size-``j`` multisets over an ``m``-element set: (m+j-1)!/((m-1)!*j!)."""
    if m < 1 or j < 0:
        raise ValueError(f"multichoose({m}, {j}) is undefined")
    return math.comb(m + j - 1, j)


class GroundSet:
    """An ordered, nonempty alphabet of distinct labels.

    The order is fixed at construction and is canonical for the lifetime
    of the set; enumeration order and printed output depend on it.
    """

    __slots__ = ("_labels", "_index")

    def __init__(self, labels: Iterable[Label]):
        labels = tuple(labels)
        if not labels:
            raise ValueError("ground set must be nonempty")
        index = {x: k for k, x in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError("ground set labels must be pairwise distinct")
        self._labels = labels
        self._index = index

    @property
    def labels(self) -> tuple[Label, ...]:
        return self._labels

    def index(self, label: Label) -> int:
        return self._index[label]

    def is_numeric(self) -> bool:
        """True when every label is a natural number."""
        return all(isinstance(x, int) for x in self._labels)

    def is_levels(self) -> bool:
        """True when the labels are exactly the levels 0, 1, ..., N-1."""
        return self._labels == tuple(range(len(self._labels)))

    def __len__(self) -> int:
        return len(self._labels)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self._labels == other._labels

    def __hash__(self) -> int:
        return hash(self._labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self._labels)!r})"


def levels(n: int) -> GroundSet:
    """The numeric ground set {0, 1, ..., n-1} of energy levels."""
    if n < 1:
        raise ValueError("need at least one level")
    return GroundSet(range(n))


class Multiset:
    """A finite map from ground-set labels to positive multiplicities.

    Zero entries are normalized away at construction; equality and
    hashing see only the ground set and the stored (label, count) pairs.
    """

    __slots__ = ("_ground", "_counts", "_hash")

    def __init__(self, ground: GroundSet,
                 counts: Union[Mapping[Label, int], Iterable[tuple[Label, int]]] = ()):
        if not isinstance(ground, GroundSet):
            raise TypeError("ground must be a GroundSet")
        items = counts.items() if isinstance(counts, Mapping) else counts
        acc: dict[Label, int] = {}
        for label, n in items:
            if label not in ground:
                raise ValueError(f"label {label!r} not in ground set")
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"multiplicity of {label!r} must be a natural, got {n!r}")
            if n:
                acc[label] = acc.get(label, 0) + n
        self._ground = ground
        # stored in ground order so iteration and hashing are canonical
        self._counts = {x: acc[x] for x in ground if x in acc}
        self._hash = hash((ground, tuple(self._counts.items())))

    @property
    def ground(self) -> GroundSet:
        return self._ground

    @property
    def size(self) -> int:
        """Total number of elements, multiplicities included."""
        return sum(self._counts.values())

    def support(self) -> tuple[Label, ...]:
        """Labels with nonzero multiplicity, in ground order."""
        return tuple(self._counts)

    def counts_vector(self) -> tuple[int, ...]:
        """Dense multiplicity vector following the ground-set order."""
        return tuple(self._counts.get(x, 0) for x in self._ground)

    def items(self) -> tuple[tuple[Label, int], ...]:
        return tuple(self._counts.items())

    def __call__(self, label: Label) -> int:
        return self._counts.get(label, 0)

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Multiset)
                and self._ground == other._ground
                and self._counts == other._counts)

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: "Multiset") -> bool:
        return leq(self, other)

    def __add__(self, other: "Multiset") -> "Multiset":
        self._require_common_ground(other)
        merged = dict(self._counts)
        for x, n in other._counts.items():
            merged[x] = merged.get(x, 0) + n
        return Multiset(self._ground, merged)

    def __sub__(self, other: "Multiset") -> "Multiset":
        self._require_common_ground(other)
        diff = dict(self._counts)
        for x, n in other._counts.items():
            if diff.get(x, 0) < n:
                raise ValueError("multiset subtraction would go negative")
            diff[x] = diff[x] - n
        return Multiset(self._ground, diff)

    def __mul__(self, k: int) -> "Multiset":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("cannot scale a multiset by a negative factor")
        return Multiset(self._ground, {x: k * n for x, n in self._counts.items()})

    __rmul__ = __mul__

    def _require_common_ground(self, other: "Multiset") -> None:
        if not isinstance(other, Multiset) or self._ground != other._ground:
            raise ValueError("multisets must share a ground set")

    def __str__(self) -> str:
        return format_multiset(self)

    def __repr__(self) -> str:
        return f"<Multiset {format_multiset(self)}>"


def empty(ground: GroundSet) -> Multiset:
    return Multiset(ground)


def unit(ground: GroundSet, label: Label) -> Multiset:
    """The singleton multiset 1|label>."""
    return Multiset(ground, {label: 1})


def size(phi: Multiset) -> int:
    return phi.size


def coefficient(phi: Multiset) -> int:
    """Number of sequences accumulating to ``phi``: size! / prod(counts!)."""
    out = math.factorial(phi.size)
    for _, n in phi.items():
        out //= math.factorial(n)
    return out


def som(phi: Multiset) -> int:
    """Multiplicity-weighted sum of the numeric labels (total energy)."""
    if not phi.ground.is_numeric():
        raise ValueError("som requires a numeric ground set")
    return sum(n * x for x, n in phi.items())


def _inferred_ground(labels: Iterable[Label]) -> GroundSet:
    """Canonical ground for bare labels: levels 0..max for numerics,
    sorted label order otherwise.  Canonicalizing here keeps multisets
    equal regardless of the order their labels were first seen in."""
    distinct = set(labels)
    if not distinct:
        raise ValueError("cannot infer a ground set from no labels")
    if all(isinstance(x, int) for x in distinct):
        return levels(max(distinct) + 1)
    if any(isinstance(x, int) for x in distinct):
        raise ValueError("cannot infer a ground set from mixed label types")
    return GroundSet(sorted(distinct))


def accumulate(seq: Sequence[Label], ground: GroundSet | None = None) -> Multiset:
    """Forget the order of a sequence, keeping only multiplicities.

    When no ground set is given a canonical one is inferred from the
    sequence; the empty sequence then has no ground to infer and is
    rejected.
    """
    if ground is None:
        ground = _inferred_ground(seq)
    return Multiset(ground, [(x, 1) for x in seq])


def reverse(phi: Multiset) -> Multiset:
    """Flip level j to level N-1-j; multiset coefficients are preserved."""
    if not phi.ground.is_levels():
        raise ValueError("reverse requires the ground set 0..N-1")
    n = len(phi.ground)
    return Multiset(phi.ground, {n - 1 - x: c for x, c in phi.items()})


def leq(phi: Multiset, psi: Multiset) -> bool:
    """Pointwise comparison of multiplicities over a common ground set."""
    phi._require_common_ground(psi)
    return all(c <= psi(x) for x, c in phi.items())


# ---------------------------------------------------------------------------
# Enumeration
#
# Canonical order is colexicographic on the dense multiplicity vector:
# two multisets compare at the last ground position where they differ.
# Equivalently, the reversed count vectors are in ascending lexicographic
# order.  The recursive generators below emit exactly that order by
# choosing the count of the last ground position in the outermost loop.
# ---------------------------------------------------------------------------


def _bounded_compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Vectors (c_0..c_{m-1}) with sum ``total`` and c_p <= caps[p], colex order."""
    m = len(caps)
    # tail_room[p] = caps[0] + ... + caps[p-1], the most the positions below p can hold
    tail_room = [0] * (m + 1)
    for p in range(m):
        tail_room[p + 1] = tail_room[p] + caps[p]
    vec = [0] * m

    def rec(pos: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if pos == 0:
            if remaining <= caps[0]:
                vec[0] = remaining
                yield tuple(vec)
            return
        lo = max(0, remaining - tail_room[pos])
        hi = min(caps[pos], remaining)
        for c in range(lo, hi + 1):
            vec[pos] = c
            yield from rec(pos - 1, remaining - c)

    yield from rec(m - 1, total)


def _level_sum_compositions(n: int, total: int, target: int) -> Iterator[tuple[int, ...]]:
    """Count vectors over levels 0..n-1 with size ``total`` and weighted sum
    ``target``, in colex order.

    Prunes on both remaining size and remaining sum: after fixing counts
    at levels above j, a count c at level j is feasible iff the leftover
    sum fits in the leftover slots at levels below j.
    """
    vec = [0] * n

    def rec(j: int, remaining: int, weight: int) -> Iterator[tuple[int, ...]]:
        if j == 0:
            if weight == 0:
                vec[0] = remaining
                yield tuple(vec)
            return
        # leftover weight after taking c at level j must satisfy
        # 0 <= weight - c*j <= (j-1)*(remaining - c)
        lo = max(0, weight - (j - 1) * remaining)
        hi = min(remaining, weight // j)
        for c in range(lo, hi + 1):
            vec[j] = c
            yield from rec(j - 1, remaining - c, weight - c * j)

    yield from rec(n - 1, total, target)


def enumerate_multisets(ground: GroundSet, k: int,
                        caps: Mapping[Label, int] | None = None) -> Iterator[Multiset]:
    """All multisets of size ``k`` over ``ground``, in canonical colex order.

    With ``caps``, restricts each label x to at most caps[x] occurrences,
    which enumerates exactly the sub-multisets of size k of a given urn.
    Yields multichoose(len(ground), k) multisets in the unrestricted case.
    """
    if k < 0:
        raise ValueError("size must be a natural")
    labs = ground.labels
    cap_vec = [k] * len(labs) if caps is None else [min(k, caps.get(x, 0)) for x in labs]
    for vec in _bounded_compositions(k, cap_vec):
        yield Multiset(ground, zip(labs, vec))


def enumerate_multisets_with_sum(n: int, k: int, i: int) -> Iterator[Multiset]:
    """All multisets over levels 0..n-1 with size ``k`` and som ``i``.

    Generated by bounded composition with remaining-size and
    remaining-sum pruning, never by filtering the full size-k family.
    Canonical colex order.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if not 0 <= i <= (n - 1) * k:
        raise ValueError(f"target sum {i} out of range [0, {(n - 1) * k}]")
    ground = levels(n)
    labs = ground.labels
    for vec in _level_sum_compositions(n, k, i):
        yield Multiset(ground, zip(labs, vec))


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^(\d+)\s*\|\s*([A-Za-z_]\w*|\d+)\s*>$")


def format_multiset(phi: Multiset) -> str:
    if not phi:
        return "0"
    return " + ".join(f"{n}|{x}>" for x, n in phi.items())


def parse_multiset(text: str, ground: GroundSet | None = None) -> Multiset:
    """Parse the ket text form; see the module docstring for the grammar.

    Without an explicit ground set a canonical one is inferred: levels
    0..max for all-numeric labels, sorted label order otherwise.
    """
    stripped = text.strip()
    if stripped == "0":
        if ground is None:
            raise ValueError("the empty multiset needs an explicit ground set")
        return Multiset(ground)
    pairs: list[tuple[Label, int]] = []
    for part in stripped.split("+"):
        m = _TERM_RE.match(part.strip())
        if not m:
            raise ValueError(f"malformed multiset term {part.strip()!r}")
        count, label = m.groups()
        pairs.append((int(label) if label.isdigit() else label, int(count)))
    if ground is None:
        ground = _inferred_ground(x for x, _ in pairs)
    return Multiset(ground, pairs)
