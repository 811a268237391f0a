"""Regular-sequence criteria and depth certificates for squares of monomial ideals."""

from .combinatorics import (
    Hypergraph,
    LeavesBound,
    analyze_cycles,
    edge_ideal,
    leaves_bound,
    neighborhood_monomials,
    power_regularity_bound,
    star_form,
    to_hypergraph,
    tt_associated_primes_square,
)
from .core import (
    LinearSum,
    Monomial,
    MonomialIdeal,
    Polynomial,
    RingContext,
    TermOrder,
    colon_by_monomial,
    degree_in_variable,
    ideal_power,
    intersect,
    minimalize,
    monomial_lcm_gcd,
    same_ring,
    sequence_term_order,
)
from .errors import PreconditionError, ResourceLimitError, RingMismatchError
from .groebner import (
    DEFAULT_TERM_BUDGET,
    GroebnerBasis,
    buchberger,
    contains_poly_ideal,
    initial_ideal,
    normal_form,
    s_polynomial,
)
from .initreg import (
    SequenceCertificate,
    certified_square_depth,
    check_star,
    closed_form_ini_square_trinomial,
    closed_form_ini_trinomial,
    colon_linear_binomial,
    criterion_binomial,
    criterion_binomial_family,
    criterion_combined,
    criterion_trinomial,
    criterion_trinomial_family,
    find_sequences,
    hat_substitute,
    is_initially_regular,
    iterated_initial,
)
from .oracle import (
    MonomialPrime,
    associated_primes,
    depth,
    is_regular_sequence,
    is_zerodivisor_linear,
    lattice_betti_at,
    maximal_ideal_is_associated,
    pd_witness,
    polarize,
    taylor_tor,
)

__version__ = "0.1.0"
