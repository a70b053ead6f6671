"""Exact combinatorics of particles over energy levels.

Multisets with fixed size and sum, the N-nomial coefficients counting
them, the discrete Boltzmann distribution families they normalize, the
shift Markov chain whose equilibria they are, their classical
approximations, and the multivariate urn generalizations.  All
probability is exact rational arithmetic; floats appear only in
entropy, divergences, and the approximation solvers.
"""

from .multisets import (
    GroundSet,
    Multiset,
    accumulate,
    binom,
    coefficient,
    empty,
    enumerate_multisets,
    enumerate_multisets_with_sum,
    format_multiset,
    leq,
    levels,
    multichoose,
    parse_multiset,
    reverse,
    size,
    som,
    unit,
)
from .nomials import (
    NomialTable,
    nomial,
    nomial_closed_form,
    nomial_enum_sequences,
    nomial_prefix_sum,
    nomial_recursive,
    nomial_via_multisets,
    polynomial_expand,
    vandermonde_check,
)
from .distributions import (
    Channel,
    Dist,
    channel_compose,
    entropy,
    flrn,
    image,
    kl_divergence,
    mean,
    multiset_coefficient_distribution,
    point,
    pushforward,
    total_variation,
    uniform,
    variance,
)
from .boltzmann import (
    boltzmann_on_energy,
    boltzmann_on_multisets,
    boltzmann_on_numbers,
    boltzmann_on_numbers_via_multisets,
    microstate_uniform,
    projection_marginal,
    scaled_unnormalized,
)
from .markov import (
    flrn_dagger,
    iterate_chain,
    sample_trajectory,
    shift,
    shift_channel,
    shift_on_numbers,
    stationarity_residual,
    transition_matrix,
)
from .approx import (
    ApproxReport,
    CandidateReport,
    compare,
    continuous_exponential_pdf,
    discrete_exponential,
    max_entropy_dist,
    ratio_approx,
)
from .multivariate import (
    boltzmann_multi,
    boltzmann_multi_on_levels,
    hypergeometric,
    mult_binom,
    mult_multichoose,
    nomial_coeff_multisets,
    nomial_distribution,
    polya,
)

__version__ = "0.1.0"
