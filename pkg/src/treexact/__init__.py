"""treexact: decide, build, and audit positive-weighted trees realizing a
dissimilarity matrix on exactly its n labeled points."""

from .conditions import (
    CheckFragment,
    CheckReport,
    QuadrupleClass,
    QuadrupleKind,
    Witness,
    check_all,
    classify_quadruple,
    condition_i_check,
    condition_ii_check,
    four_point_check,
)
from .core import (
    DissimilarityMatrix,
    Edge,
    WeightedTree,
    all_pairs_weights,
    parse_matrix,
    parse_tree,
    path_weight,
    tree_to_dot,
    trees_equal,
)
from .errors import (
    BadRange,
    BadSequence,
    DuplicateIndex,
    InvalidMatrix,
    InvalidTree,
    MalformedInput,
    NoMiddleVertex,
    PolicyMismatch,
    SupportVerificationFailure,
    TooLarge,
    TooSmall,
    TreexactError,
    UniquenessViolation,
    UnknownVertex,
)
from .numeric import EXACT, ExactPolicy, FloatPolicy, Policy, Scalar
from .oracle import (
    DEFAULT_ENUMERATION_CAP,
    RealizationCensus,
    count_realizations,
    prufer_decode,
    random_weighted_tree,
    realize_on_topology,
)
from .reconstruct import (
    PendantCertificate,
    UnrealizableWitness,
    find_pendant,
    reconstruct,
    solve_base3,
)

__version__ = "0.1.0"

__all__ = [
    "BadRange",
    "BadSequence",
    "CheckFragment",
    "CheckReport",
    "DEFAULT_ENUMERATION_CAP",
    "DissimilarityMatrix",
    "DuplicateIndex",
    "EXACT",
    "Edge",
    "ExactPolicy",
    "FloatPolicy",
    "InvalidMatrix",
    "InvalidTree",
    "MalformedInput",
    "NoMiddleVertex",
    "PendantCertificate",
    "Policy",
    "PolicyMismatch",
    "QuadrupleClass",
    "QuadrupleKind",
    "RealizationCensus",
    "Scalar",
    "SupportVerificationFailure",
    "TooLarge",
    "TooSmall",
    "TreexactError",
    "UniquenessViolation",
    "UnknownVertex",
    "UnrealizableWitness",
    "WeightedTree",
    "Witness",
    "all_pairs_weights",
    "check_all",
    "classify_quadruple",
    "condition_i_check",
    "condition_ii_check",
    "count_realizations",
    "find_pendant",
    "four_point_check",
    "parse_matrix",
    "parse_tree",
    "path_weight",
    "prufer_decode",
    "random_weighted_tree",
    "realize_on_topology",
    "reconstruct",
    "solve_base3",
    "tree_to_dot",
    "trees_equal",
]
