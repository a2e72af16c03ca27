"""Janet and Janet-like Gröbner bases of linear difference ideals."""

from .diffring import (
    DiffPoly,
    Monomial,
    Ranking,
    RingSpec,
    leading_term,
    poly_combine,
    prolong,
    rank_compare,
)
from .division import JANET, JANET_LIKE, DivisionAssignment, inv_divisor, janet_assign, janet_like_assign
from .engine import CRITERIA, Basis, BasisElement, autoreduce, criterion_applies, inv_reduce, janet_basis
from .estimator import DifferenceBasis
from .frontend import (
    ParseError,
    Session,
    SessionOptions,
    normalize_direction,
    parse_expression,
    parse_ring,
    parse_system,
    pol2shift,
    serialize,
    shift2pol,
)
from .quotient import (
    HilbertPolynomial,
    HilbertSeries,
    RelationPattern,
    RelationSet,
    StandardMonomialSet,
    add_relation,
    comp_cond,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series,
    list_relations,
    reduce_with_relations,
    residue_class_basis,
)
from .scalars import RatFun, ScalarField, ratfun_arith, ratfun_normalize, shift_coeff

__version__ = "0.1.0"

__all__ = [
    "CRITERIA",
    "JANET",
    "JANET_LIKE",
    "Basis",
    "BasisElement",
    "DiffPoly",
    "DifferenceBasis",
    "DivisionAssignment",
    "HilbertPolynomial",
    "HilbertSeries",
    "Monomial",
    "ParseError",
    "Ranking",
    "RatFun",
    "RelationPattern",
    "RelationSet",
    "RingSpec",
    "ScalarField",
    "Session",
    "SessionOptions",
    "StandardMonomialSet",
    "add_relation",
    "autoreduce",
    "comp_cond",
    "criterion_applies",
    "hilbert_function",
    "hilbert_polynomial",
    "hilbert_series",
    "inv_divisor",
    "inv_reduce",
    "janet_assign",
    "janet_basis",
    "janet_like_assign",
    "leading_term",
    "list_relations",
    "normalize_direction",
    "parse_expression",
    "parse_ring",
    "parse_system",
    "pol2shift",
    "poly_combine",
    "prolong",
    "rank_compare",
    "ratfun_arith",
    "ratfun_normalize",
    "reduce_with_relations",
    "residue_class_basis",
    "serialize",
    "shift2pol",
    "shift_coeff",
]
