"""Stallings folds over graphs of finite groups and a mechanical check of the
acylindrical accessibility edge bound."""

from .agraph import (
    AGraph,
    FoldMove,
    apply_aux_move,
    apply_fold,
    apply_vertex_adjust,
    associated_graph_of_groups,
    build_wedge,
    find_fold,
    nu_translate,
    trivial_agraph,
    validate_agraph,
)
from .decoration import (
    ComplexityReport,
    DecoratedAGraph,
    Decoration,
    amalgamate_edge,
    complexity_c,
    initial_wedge_decoration,
    p_value,
    r_value,
    transport_decoration,
    validate_decoration,
)
from .errors import (
    BudgetExceeded,
    EngineInvariantError,
    InconclusiveError,
    InstanceError,
    Report,
    UnsupportedFoldShape,
)
from .graphs import (
    APath,
    Graph,
    GraphOfGroups,
    acylindricity,
    betti_number,
    default_generating_tuple,
    is_elliptic,
    is_minimal,
    is_weakly_reduced,
    reduce_apath,
    reduced_complexity_cr,
)
from .groups import (
    GroupMap,
    GroupTable,
    Subgroup,
    compose,
    conjugate_subgroup,
    is_monomorphism,
    map_subgroup,
    subgroup_closure,
    subgroup_intersection,
    verify_group_axioms,
)
from .instance import Instance, load_instance, parse_instance
from .pipeline import theorem_pipeline

__version__ = "0.1.0"
