"""Finite-truncation models of BV/AC functional calculi on compact subsets of R."""

from .calculus import (
    ConjugatedCalculus,
    DiagonalCalculus,
    IdempotentCalculus,
    PhiCalculus,
    calculus_bound,
    conjugated_calculus,
    diagonal_calculus,
    homomorphism_check,
    idempotent_calculus,
    phi1,
    phi2,
)
from .catalog import parse_rule, polynomial_catalog, standard_catalog
from .functions import (
    BVFunction,
    FunctionRule,
    GaussianRational,
    SetMismatch,
    UnsupportedRule,
    ac_norm_proxy,
    bv_norm,
    is_continuous_at_limit,
    restrict,
    variation,
)
from .operators import (
    OperatorModel,
    SpaceTag,
    direct_sum,
    ell1_iso_u,
    multiplication_operator,
    operator_norm,
    u_iso_c0,
)
from .sets import CompactRealSet, InvalidArgument, interval_grid, parse_set, sigma0

__version__ = "0.1.0"
