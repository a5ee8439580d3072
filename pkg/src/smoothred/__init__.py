"""Certified smoothness certificates and their descent to finitely generated subrings."""

from .certificate import (
    Presentation,
    SmoothnessCertificate,
    VerificationReport,
    jacobian,
    synthesize_certificate,
    verify_certificate,
)
from .errors import (
    Inconclusive,
    IntegralSolveFailed,
    InvalidCertificate,
    ParseError,
    SmoothredError,
    UnsupportedCoefficientRing,
)
from .ideals import (
    CofactorWitness,
    GroebnerData,
    IdealBasis,
    groebner,
    membership,
    reduce_with_cofactors,
    solve_matrix_unit_mod_ideal,
)
from .poly import (
    Polynomial,
    coefficients_of,
    gens,
    hasse_derivative,
    poly_add,
    poly_mul,
    poly_neg,
    substitute,
    taylor_shift,
)
from .quotient import PolynomialQuotient
from .reduction import (
    NoetherianReduction,
    ReductionReport,
    build_reduction,
    extract_generators,
    reduce_presentation,
    verify_reduction,
)
from .rings import QQ, ZZ, Integers, IntegersMod, Rationals, RingElement, ring_add, ring_inverse, ring_mul
from .subring import SubringView, subring_generated
from .syntax import emit_presentation, parse_expression, parse_presentation, parse_ring

__version__ = "0.1.0"
