"""The three discrete Boltzmann distribution families.

For K particles spread over the energy levels 0..N-1 with total energy i:

* on multisets: each admissible configuration phi weighted by
  coefficient(phi) / C_N(K, i), i.e. by its share of microstates;
* on numbers: the energy of one randomly chosen particle, equal both to
  frequentist learning applied in probability to the multiset family and
  to the nomial ratio C_N(K-1, i-j) / C_N(K, i);
* on energy: the physically common special case N = E+1, i = E, where
  the weights collapse to multichoose ratios.

The nomial-ratio route is the default for the numbers family (linear
work instead of configuration enumeration); the pushforward route is
kept as its oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .distributions import Dist, flrn, image, pushforward, uniform
from .multisets import coefficient, enumerate_multisets_with_sum, multichoose
from .nomials import DEFAULT_BUDGET, nomial

__all__ = [
    "boltzmann_on_multisets",
    "boltzmann_on_numbers",
    "boltzmann_on_numbers_via_multisets",
    "boltzmann_on_energy",
    "microstate_uniform",
    "projection_marginal",
    "scaled_unnormalized",
]


def _validate_config(n: int, k: int, i: int) -> None:
    if n < 1 or k < 1:
        raise ValueError("need N >= 1 levels and K >= 1 particles")
    if not 0 <= i <= (n - 1) * k:
        raise ValueError(f"total energy {i} out of range [0, {(n - 1) * k}]")


def boltzmann_on_multisets(n: int, k: int, i: int) -> Dist:
    """Configurations of k particles over n levels with total energy i,
    weighted by their multiset coefficients."""
    _validate_config(n, k, i)
    total = nomial(n, k, i)
    return Dist((phi, Fraction(coefficient(phi), total))
                for phi in enumerate_multisets_with_sum(n, k, i))


def boltzmann_on_numbers(n: int, k: int, i: int) -> Dist:
    """Energy level of a random particle, via the nomial ratio.

    Weight of level j is C_N(K-1, i-j) / C_N(K, i); levels j > i carry
    no weight, so for i < N the support stays within 0..i.
    """
    _validate_config(n, k, i)
    total = nomial(n, k, i)
    pairs = []
    for j in range(min(n, i + 1)):
        rest = i - j
        if rest <= (n - 1) * (k - 1):
            pairs.append((j, Fraction(nomial(n, k - 1, rest), total)))
    return Dist(pairs)


def boltzmann_on_numbers_via_multisets(n: int, k: int, i: int) -> Dist:
    """Oracle route: frequentist learning pushed forward over the
    multiset family.  Exponential work; must agree exactly with
    boltzmann_on_numbers."""
    _validate_config(n, k, i)
    return pushforward(flrn, boltzmann_on_multisets(n, k, i))


def boltzmann_on_energy(e: int, k: int) -> Dist:
    """The numbers family at N = E+1 levels with total energy E.

    Weight of level j is multichoose(K-1, E-j) / multichoose(K, E).
    The domain is E >= 1, K >= 2; the formula would extend below that
    but the extension is refused rather than silently allowed.
    """
    if e < 1 or k < 2:
        raise ValueError("energy family needs E >= 1 and K >= 2")
    total = multichoose(k, e)
    return Dist((j, Fraction(multichoose(k - 1, e - j), total)) for j in range(e + 1))


def microstate_uniform(n: int, k: int, i: int, budget: int = DEFAULT_BUDGET) -> Dist:
    """Uniform distribution on the sequences (microstates) of length k
    over 0..n-1 that sum to i.  Enumerates all n**k sequences, so a
    budget guard applies."""
    _validate_config(n, k, i)
    if n ** k > budget:
        raise ValueError(f"enumeration of {n}**{k} sequences exceeds budget {budget}")
    seqs = [v for v in itertools.product(range(n), repeat=k) if sum(v) == i]
    return uniform(seqs)


def projection_marginal(omega: Dist, pos: int) -> Dist:
    """Marginal of a sequence-supported distribution at one position."""
    return image(omega, lambda v: v[pos])


def scaled_unnormalized(e: int, k: int) -> list[float]:
    """K times the energy-family weights, as decimals (occupation numbers)."""
    return [float(k * w) for w in boltzmann_on_energy(e, k).weights()]
