"""Approximations of the energy-level Boltzmann distribution.

Four classical approximations for total energy E, K particles and mean
mu = E/K:

1. geometric ratio: normalize (mu/(mu+1))^j, the limit of the ratio of
   successive exact weights as K grows;
2. discrete exponential: normalize e^(-j/mu), using ln(1 + 1/mu) ~ 1/mu;
3. maximum entropy: normalize s^j, with s the unique positive root of
   sum_{0<=j<=E} x^j (j - mu) = 0 from the Lagrange-multiplier
   stationarity conditions;
4. continuous exponential density with rate 1/mu.

Floats enter the library only here and in entropy/KL.  Wherever a float
weight feeds a distribution it is converted exactly to a rational first
and normalized in exact arithmetic, so every returned ``Dist`` still
sums to exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .boltzmann import boltzmann_on_energy
from .distributions import Dist, entropy, kl_divergence, mean, point, total_variation

Rational = Union[int, Fraction]

__all__ = [
    "ratio_approx",
    "discrete_exponential",
    "max_entropy_dist",
    "continuous_exponential_pdf",
    "compare",
    "ApproxReport",
    "CandidateReport",
]


def _normalized(weights: list[Fraction]) -> Dist:
    total = sum(weights)
    return Dist(enumerate(w / total for w in weights))


def ratio_approx(e: int, mu: Rational) -> Dist:
    """Normalization of (mu/(mu+1))^j over 0..E, computed exactly.

    Successive weights have the exact constant ratio mu/(mu+1).
    """
    mu = Fraction(mu)
    if e < 1 or mu <= 0:
        raise ValueError("need E >= 1 and mu > 0")
    r = mu / (mu + 1)
    return _normalized([r ** j for j in range(e + 1)])


def discrete_exponential(e: int, mu: Rational) -> Dist:
    """Normalization of e^(-j/mu) over 0..E.

    The raw weights are double precision; they are lifted exactly to
    rationals before normalizing, so the result is a genuine
    distribution (sum exactly 1) whose values carry float accuracy.
    """
    mu = Fraction(mu)
    if e < 1 or mu <= 0:
        raise ValueError("need E >= 1 and mu > 0")
    rate = 1.0 / float(mu)
    return _normalized([Fraction(math.exp(-rate * j)) for j in range(e + 1)])


def _mean_polynomial(e: int, mu: float) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """The stationarity polynomial f(x) = sum x^j (j - mu) and its derivative.

    The coefficient sequence j - mu has a single sign change, so f has
    exactly one root on (0, inf) whenever 0 < mu < E.
    """

    def f(x: float) -> float:
        acc, p = 0.0, 1.0
        for j in range(e + 1):
            acc += p * (j - mu)
            p *= x
        return acc

    def fprime(x: float) -> float:
        acc, p = 0.0, 1.0
        for j in range(1, e + 1):
            acc += j * p * (j - mu)
            p *= x
        return acc

    return f, fprime


def _solve_base(e: int, mu: float) -> float:
    """Unique positive root of the stationarity polynomial.

    Brackets by geometric expansion around the seed mu/(mu+1), then
    bisects, finishing with Newton steps kept inside the bracket.
    Deterministic; asserts that a sign change was actually found.
    """
    f, fprime = _mean_polynomial(e, mu)
    seed = mu / (mu + 1.0)
    lo = hi = seed
    flo = f(lo)
    for _ in range(200):
        if flo < 0:
            break
        lo /= 2.0
        flo = f(lo)
    else:
        raise ArithmeticError("no sign change found below the seed")
    fhi = f(hi)
    for _ in range(200):
        if fhi > 0:
            break
        hi *= 2.0
        fhi = f(hi)
    else:
        raise ArithmeticError("no sign change found above the seed")
    if not (f(lo) < 0 < f(hi)):
        raise ArithmeticError("root bracketing failed")

    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = f(x)
        if abs(fx) < 1e-12 or hi - lo < 1e-15 * max(1.0, x):
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        d = fprime(x)
        newton = x - fx / d if d else x
        x = newton if lo < newton < hi else 0.5 * (lo + hi)
    return x


def max_entropy_dist(e: int, mu: Rational) -> tuple[Dist, float]:
    """The entropy-maximizing distribution on 0..E with mean ``mu``.

    Returns (distribution, s) where the weights are proportional to s^j.
    Boundary means give the point masses at 0 and E (with s = 0 and
    s = inf); interior means are solved numerically and the achieved
    mean is checked against ``mu`` to 1e-9.
    """
    mu = Fraction(mu)
    if e < 1 or not 0 <= mu <= e:
        raise ValueError(f"mean must lie in [0, {e}]")
    if mu == 0:
        return point(0), 0.0
    if mu == e:
        return point(e), math.inf
    s = _solve_base(e, float(mu))
    base = Fraction(s)
    dist = _normalized([base ** j for j in range(e + 1)])
    if abs(float(mean(dist) - mu)) >= 1e-9:
        raise ArithmeticError(f"solved mean misses the target by {float(mean(dist) - mu)}")
    return dist, s


def continuous_exponential_pdf(mu: Rational) -> Callable[[float], float]:
    """Density of the exponential law with rate 1/mu on [0, inf)."""
    rate = 1.0 / float(Fraction(mu))
    if rate <= 0:
        raise ValueError("mu must be positive")

    def pdf(x: float) -> float:
        return rate * math.exp(-rate * x) if x >= 0 else 0.0

    return pdf


@dataclass(frozen=True)
class CandidateReport:
    """One approximation held against the exact reference."""
    name: str
    dist: Dist
    mean: Fraction
    entropy: float
    kl_from_reference: float
    total_variation: Fraction


@dataclass(frozen=True)
class ApproxReport:
    """Side-by-side comparison of the three discrete approximations plus
    the continuous density descriptor."""
    energy: int
    particles: int
    mu: Fraction
    reference: Dist
    reference_mean: Fraction
    reference_entropy: float
    candidates: tuple[CandidateReport, ...]
    max_entropy_base: float
    continuous_rate: float

    def candidate(self, name: str) -> CandidateReport:
        for c in self.candidates:
            if c.name == name:
                return c
        raise KeyError(name)


def compare(e: int, k: int) -> ApproxReport:
    """Exact reference at (E, K) against all three discrete candidates."""
    reference = boltzmann_on_energy(e, k)
    mu = Fraction(e, k)
    maxent, s = max_entropy_dist(e, mu)
    named = [
        ("ratio", ratio_approx(e, mu)),
        ("discrete-exponential", discrete_exponential(e, mu)),
        ("max-entropy", maxent),
    ]
    candidates = tuple(
        CandidateReport(
            name=name,
            dist=dist,
            mean=mean(dist),
            entropy=entropy(dist),
            kl_from_reference=kl_divergence(reference, dist),
            total_variation=total_variation(reference, dist),
        )
        for name, dist in named
    )
    return ApproxReport(
        energy=e,
        particles=k,
        mu=mu,
        reference=reference,
        reference_mean=mean(reference),
        reference_entropy=entropy(reference),
        candidates=candidates,
        max_entropy_base=s,
        continuous_rate=float(1 / mu),
    )
