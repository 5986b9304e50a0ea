"""Matrix, vector, scalar and corner reachability over semirings."""
from .decide import closure_semigroup, decide, orbit_vectors, r1_bounded, rational_language_dfa
from .instances import (CornerReach, Decision, MatrixReach, ScalarReach, VectorReach, parse_instance,
                        plus_star_convert, serialize_instance)
from .matrix import Matrix, Morphism
from .oracle import oracle_search, reduction_consistency_check
from .reductions import reduce
from .semiring import get_semiring, truncation_quotient

__all__ = [
    "CornerReach", "Decision", "Matrix", "MatrixReach", "Morphism", "ScalarReach", "VectorReach",
    "closure_semigroup", "decide", "get_semiring", "oracle_search", "orbit_vectors", "parse_instance",
    "plus_star_convert", "r1_bounded", "rational_language_dfa", "reduce", "reduction_consistency_check",
    "serialize_instance", "truncation_quotient",
]
