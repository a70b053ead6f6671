"""Multiset-indexed coefficients and the multivariate urn distributions.

Binomial, multichoose, and N-nomial coefficients extend from numbers to
multisets as per-label products.  The extensions obey multivariate
Vandermonde identities, which normalize three distributions on draws
from an urn psi:

* hypergeometric (draw and remove): binom(psi, phi) / binom(L, K) on the
  sub-multisets phi of psi of size K;
* Polya (draw and duplicate): multichoose(psi, phi) / multichoose(L, K)
  on all size-K multisets;
* the nomial distribution: C_N(psi, phi) / C_N(L, i) on the size-i
  multisets below (N-1)*psi, with N the number of colours.

All three push forward along frequentist learning to flrn(psi) exactly.
A Boltzmann family on tuples of configurations, one per particle kind,
closes the construction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .distributions import Channel, Dist, flrn, pushforward
from .multisets import (
    Multiset,
    _bounded_compositions,
    binom,
    coefficient,
    enumerate_multisets,
    enumerate_multisets_with_sum,
    leq,
    multichoose,
)
from .nomials import nomial

__all__ = [
    "mult_binom",
    "mult_multichoose",
    "hypergeometric",
    "polya",
    "nomial_coeff_multisets",
    "nomial_distribution",
    "boltzmann_multi",
    "boltzmann_multi_on_levels",
]


def mult_binom(psi: Multiset, phi: Multiset) -> int:
    """Product of binom(psi(x), phi(x)) over the ground; needs phi <= psi."""
    if not leq(phi, psi):
        raise ValueError("mult_binom needs phi <= psi pointwise")
    out = 1
    for x, c in phi.items():
        out *= binom(psi(x), c)
    return out


def mult_multichoose(psi: Multiset, phi: Multiset) -> int:
    """Product of multichoose(psi(x), phi(x)); needs psi >= 1 everywhere."""
    if phi.ground != psi.ground:
        raise ValueError("multisets must share a ground set")
    out = 1
    for x in psi.ground:
        if psi(x) < 1:
            raise ValueError("mult_multichoose needs psi(x) >= 1 on every label")
        out *= multichoose(psi(x), phi(x))
    return out


def hypergeometric(k: int, psi: Multiset) -> Dist:
    """Draw-and-remove distribution of k draws from the urn psi."""
    total_size = psi.size
    if not 0 <= k <= total_size:
        raise ValueError(f"cannot draw {k} from an urn of size {total_size}")
    denom = binom(total_size, k)
    caps = dict(psi.items())
    return Dist((phi, Fraction(mult_binom(psi, phi), denom))
                for phi in enumerate_multisets(psi.ground, k, caps=caps))


def polya(k: int, psi: Multiset) -> Dist:
    """Draw-and-duplicate distribution of k draws from the urn psi."""
    if k < 0:
        raise ValueError("draw size must be a natural")
    denom = multichoose(psi.size, k)
    return Dist((phi, Fraction(mult_multichoose(psi, phi), denom))
                for phi in enumerate_multisets(psi.ground, k))


def nomial_coeff_multisets(n: int, psi: Multiset, phi: Multiset) -> int:
    """Product of C_N(psi(x), phi(x)); needs phi <= (N-1)*psi pointwise."""
    if n < 1:
        raise ValueError("need N >= 1")
    if not leq(phi, (n - 1) * psi):
        raise ValueError("nomial coefficient needs phi <= (N-1)*psi pointwise")
    out = 1
    for x in psi.ground:
        out *= nomial(n, psi(x), phi(x))
    return out


def nomial_distribution(i: int, psi: Multiset, n: int | None = None) -> Dist:
    """The nomial draw distribution of total i from the sizes urn psi.

    ``n`` defaults to the number of colours, the case in which the
    normalizer C_N(L, i) is the plain N-nomial of the urn size L.
    """
    if n is None:
        n = len(psi.ground)
    total_size = psi.size
    if n < 1 or total_size < 1:
        raise ValueError("need N >= 1 and a nonempty urn")
    if not 0 <= i <= (n - 1) * total_size:
        raise ValueError(f"total {i} out of range [0, {(n - 1) * total_size}]")
    denom = nomial(n, total_size, i)
    caps = {x: (n - 1) * c for x, c in psi.items()}
    return Dist((phi, Fraction(nomial_coeff_multisets(n, psi, phi), denom))
                for phi in enumerate_multisets(psi.ground, i, caps=caps))


def boltzmann_multi(n: int, psi: Multiset, i: int) -> Dist:
    """Boltzmann distribution on tuples of configurations, one component
    per particle kind x with psi(x) particles, sharing the total energy i.

    The weight of a tuple is the product of the component coefficients
    over C_N(K, i) with K the total particle count; that this
    normalizes is re-verified by construction on every call.
    """
    k = psi.size
    if n < 1 or k < 1:
        raise ValueError("need N >= 1 and a nonempty sizes urn")
    if not 0 <= i <= (n - 1) * k:
        raise ValueError(f"total energy {i} out of range [0, {(n - 1) * k}]")
    denom = nomial(n, k, i)
    kinds = psi.ground.labels
    sizes = [psi(x) for x in kinds]
    pairs = []
    for split in _bounded_compositions(i, [(n - 1) * s for s in sizes]):
        component_spaces = [
            list(enumerate_multisets_with_sum(n, s, e))
            for s, e in zip(sizes, split)
        ]
        for combo in itertools.product(*component_spaces):
            w = 1
            for comp in combo:
                w *= coefficient(comp)
            pairs.append((combo, Fraction(w, denom)))
    return Dist(pairs)


def boltzmann_multi_on_levels(n: int, psi: Multiset, i: int) -> Dist:
    """Per-kind level of a random particle: the tuple family pushed
    through frequentist learning componentwise.  Every kind must hold at
    least one particle."""
    if any(psi(x) < 1 for x in psi.ground):
        raise ValueError("componentwise learning needs psi(x) >= 1 on every kind")
    kernel = Channel(lambda combo: _independent_product([flrn(c) for c in combo]))
    return pushforward(kernel, boltzmann_multi(n, psi, i))


def _independent_product(dists: list[Dist]) -> Dist:
    pairs = [((), Fraction(1))]
    for d in dists:
        pairs = [(xs + (y,), p * q) for xs, p in pairs for y, q in d.items()]
    return Dist(pairs)
