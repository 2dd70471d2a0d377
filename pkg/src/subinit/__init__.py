"""subinit: exact tools for initial ideals, regular subdivisions and the
polyhedral sandwich bounds around them.

Everything computes over the rationals with no floating point; see the
individual modules for the mathematics.
"""

from .errors import InternalInvariantError, ParseError, PreconditionError, SubinitError
from .polycore import (
    BlockOrder,
    GrevLex,
    Lex,
    MonomialOrder,
    Polynomial,
    WeightOrder,
    as_weight,
    compare,
    format_polynomial,
    initial_form,
    is_homogeneous,
    parse_polynomial,
    weight_degree,
)
from .groebner import (
    Ideal,
    contains_monomial,
    eliminate,
    graded_dimension,
    ideal_contains,
    ideal_equal,
    initial_ideal,
    intersect,
    normal_form,
    reduced_groebner,
    s_polynomial,
)
from .configspace import (
    PointConfiguration,
    SubspaceBasis,
    affine_equivalent,
    groebner_homogeneity_matrix,
    lineality_of_config,
    lineality_space,
    orthogonal_projection_config,
    point_configuration_of_ideal,
)
from .subdivision import (
    AdjacencyGraph,
    Subdivision,
    adjacency_graph,
    in_secondary_cone,
    kappa_cells,
    point_in_hull,
    refines,
    regular_subdivision,
    subdivision_equal,
)
from .bounds import (
    SandwichReport,
    kappa_reduction_check,
    lower_bound_ideal,
    omega_member,
    omega_star_member,
    sandwich,
    upper_bound_ideal,
    verify_face_compatibility,
    verify_initial_membership_props,
    verify_limit_decomposition,
)
from .fixtures import (
    CensusClass,
    CensusResult,
    MatroidBases,
    Tree,
    census,
    corank_weight,
    hypersimplex_config,
    plucker_ideal,
    random_tree,
    toric_ideal,
    tree_weight,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyGraph",
    "BlockOrder",
    "CensusClass",
    "CensusResult",
    "GrevLex",
    "Ideal",
    "InternalInvariantError",
    "Lex",
    "MatroidBases",
    "MonomialOrder",
    "ParseError",
    "PointConfiguration",
    "Polynomial",
    "PreconditionError",
    "SandwichReport",
    "Subdivision",
    "SubinitError",
    "SubspaceBasis",
    "Tree",
    "WeightOrder",
    "adjacency_graph",
    "affine_equivalent",
    "as_weight",
    "census",
    "compare",
    "contains_monomial",
    "corank_weight",
    "eliminate",
    "format_polynomial",
    "graded_dimension",
    "groebner_homogeneity_matrix",
    "hypersimplex_config",
    "ideal_contains",
    "ideal_equal",
    "in_secondary_cone",
    "initial_form",
    "initial_ideal",
    "intersect",
    "is_homogeneous",
    "kappa_cells",
    "kappa_reduction_check",
    "lineality_of_config",
    "lineality_space",
    "lower_bound_ideal",
    "normal_form",
    "omega_member",
    "omega_star_member",
    "orthogonal_projection_config",
    "parse_polynomial",
    "plucker_ideal",
    "point_configuration_of_ideal",
    "point_in_hull",
    "random_tree",
    "reduced_groebner",
    "refines",
    "regular_subdivision",
    "s_polynomial",
    "sandwich",
    "subdivision_equal",
    "toric_ideal",
    "tree_weight",
    "upper_bound_ideal",
    "verify_face_compatibility",
    "verify_initial_membership_props",
    "verify_limit_decomposition",
    "weight_degree",
]
