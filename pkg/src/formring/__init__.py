"""Exact toolkit for associated graded rings over QQ."""

__version__ = "0.1.0"

from .polycore import DEGREVLEX, LEX, MonomialOrder, ParseError, Polynomial, Ring, parse_polynomial
from .gbengine import (
    Ideal,
    degree,
    eliminate,
    groebner_basis,
    hilbert_data,
    intersect,
    krull_dimension,
    normal_form,
    quotient,
    radical_membership,
    saturate,
    saturate_ideal,
)
from .monomial import (
    MonomialIdeal,
    asymptotic_primes,
    closure_member,
    integral_closure_monomial,
    minimal_primes_monomial,
    primary_decomposition_monomial,
    symbolic_power_monomial,
)
from .graded import (
    PresentedAlgebra,
    Unresolved,
    analytic_spread,
    assoc_graded,
    contract_degree_zero,
    graded_minimal_primes,
    local_dimension,
    localized_graded_dimension,
    minimal_primes,
    rees_presentation,
)
from .severi import check_instance
from .svcycle import bezout_check, build_product_join, distinguished_varieties, sv_cycle
