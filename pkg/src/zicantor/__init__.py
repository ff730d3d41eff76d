"""Gaussian integers, multiplicative orders, and rational points of self-similar sets in C."""

from .errors import DomainError, ParseError, ResourceCapError
from .gaussian import (
    GaussInt,
    GaussRat,
    canonical,
    canonical_associate,
    euclid_divmod,
    gcd,
    lcm,
    norm,
    parse_gauss,
    parse_gauss_rat,
)
from .height import conjugate_pair_product, height, height_conjugate_pair, height_prime_power
from .ifs import (
    BoxCover,
    Coding,
    DimensionReport,
    IfsSpec,
    StateGraph,
    bounding_radius_sq,
    box_cover_count,
    build_state_graph,
    coding_of,
    compose_depth,
    eval_coding,
    is_member,
    live_graph,
    prune_to_live,
    similarity_dimension,
    to_dot,
)
from .order import (
    LowerBoundCertificate,
    OrderLiftData,
    RootRational,
    build_lower_bound_certificate,
    crt_order,
    euler_phi_zi,
    lift_data,
    multiplicative_order,
    order_lift,
    order_lower_bound,
    powmod,
)
from .primes import Factorization, PrimeClass, classify, factor, is_prime, two_squares, valuation
from .search import (
    CountingFit,
    FoundRational,
    LatticeCount,
    SearchReport,
    SmoothFamily,
    count_lattice,
    counting_fit,
    enumerate_denominators,
    finiteness_search,
    members_with_denominator,
    period_height_report,
)

__version__ = "0.1.0"
