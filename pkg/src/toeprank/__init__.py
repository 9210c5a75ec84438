"""Term rank and maximum rank of block lower triangular Toeplitz block matrices.

The library works on support patterns of matrix Laurent series and produces
self-checking certificates: a maximum matching and a minimum cover of the
expanded Toeplitz pattern, plus a 0/1 parameter value whose evaluated matrix
has rank equal to the term rank.
"""

from .errors import CertificateError, PatternError, TruncationWarning
from .exact_rank import FieldMatrix, FieldSpec, max_rank_random, rank
from .lift import LiftCertificate, Prop1Report, check_proposition1, lift, term_rank, witness
from .matching import (
    AssignmentDual,
    Cover,
    DeltaCurve,
    Matching,
    WeightedBipartiteGraph,
    build_graph,
    delta_curve,
    dual_for_fixed_lambda,
    max_matching,
    select_mu_for_lambda,
)
from .pattern import (
    LaurentPattern,
    ParameterIndex,
    SupportMatrix,
    ToeplitzPattern,
    evaluate,
    expand_toeplitz,
    index_parameters,
)

__all__ = [
    "AssignmentDual",
    "CertificateError",
    "Cover",
    "DeltaCurve",
    "FieldMatrix",
    "FieldSpec",
    "LaurentPattern",
    "LiftCertificate",
    "Matching",
    "ParameterIndex",
    "PatternError",
    "Prop1Report",
    "SupportMatrix",
    "ToeplitzPattern",
    "TruncationWarning",
    "WeightedBipartiteGraph",
    "build_graph",
    "check_proposition1",
    "delta_curve",
    "dual_for_fixed_lambda",
    "evaluate",
    "expand_toeplitz",
    "index_parameters",
    "lift",
    "max_matching",
    "max_rank_random",
    "rank",
    "select_mu_for_lambda",
    "term_rank",
    "witness",
]
