"""Rényi entropies and divergences, and the error-probability bounds built on them."""

from .distributions import (
    BudgetError,
    Channel,
    DomainError,
    JointPMF,
    Order,
    ProbVector,
    ValidationError,
    example_joint,
    map_error,
    map_list_error,
)
from .entropy_bounds import lb_schur, ub_via_pmax, ub_via_single_mass
from .error_bounds import (
    fano_lb_error,
    fano_upper_H,
    lb_error_revholder,
    lb_H_from_error,
    optimize_negative_alpha,
    ub_error_from_H,
)
from .exponents import R_alpha, bsc_rates, random_coding_exponent, sphere_packing_exponent
from .ht_bounds import all_ht_bounds
from .measures import (
    arimoto_conditional,
    chernoff_information,
    from_bits,
    gallager_E0,
    renyi_divergence,
    renyi_entropy,
    to_bits,
)

__version__ = "0.1.0"
