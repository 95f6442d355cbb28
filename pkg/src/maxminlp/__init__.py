"""Local approximation algorithms for 0/1 max-min packing LPs.

The problem: agents choose nonnegative activities; parties benefit from
the summed activity of their members; resources cap the summed activity of
their members at one; maximise the smallest party benefit.  This package
provides the full local solving pipeline (constraint splitting, pruning,
coloured-graph encoding, bounded alternating-walk statistics, per-vertex
activity selection, rescaling), a synchronous round-based simulation of
the statistics gathering, an exact rational LP oracle for verification,
instance text formats with a seeded generator, and a CLI.
"""

__version__ = "0.1.0"

from .algorithm import (
    LocalityVerdict,
    PQChoice,
    SolveReport,
    assign_values,
    choose_pq,
    guarantee,
    locality_check,
    make_locality_pair,
    solve,
)
from .errors import (
    GenerationError,
    InfeasibleAssignmentError,
    InputError,
    InvariantError,
    MaxMinError,
    ParseError,
    PreconditionError,
    SizeCapError,
    UnsupportedInstanceError,
    ValidationError,
)
from .fileformat import (
    GeneratorParams,
    builtin_instance,
    format_rational,
    parse_assignment,
    parse_instance,
    parse_rational,
    random_instance,
    serialize_assignment,
    serialize_instance,
)
from .model import (
    Assignment,
    DegreeBounds,
    Hyperedge,
    HypergraphView,
    Instance,
    ball,
    check_feasible,
    degree_bounds,
    utility,
    validate,
)
from .oracle import (
    DEFAULT_AGENT_CAP,
    OracleResult,
    check_walk_lemma,
    optimum,
    serialize_oracle_result,
    walk_upper_bound,
)
from .reduction import ReductionMap, scale_back, split_constraints
from .transform import (
    ColouredGraph,
    Edge,
    EdgeKind,
    VertexKind,
    build_graph,
    check_graph,
    dump_graph,
    extract_solution,
    prune_non_contributing,
)
from .walks import (
    INFINITY,
    Walk,
    WalkStats,
    compute_stats,
    dump_stats,
    max_k_length_bounded,
    min_k_length,
    simulate_rounds,
)

__all__ = [
    "Assignment",
    "ColouredGraph",
    "DEFAULT_AGENT_CAP",
    "DegreeBounds",
    "Edge",
    "EdgeKind",
    "GenerationError",
    "GeneratorParams",
    "Hyperedge",
    "HypergraphView",
    "INFINITY",
    "InfeasibleAssignmentError",
    "InputError",
    "Instance",
    "InvariantError",
    "LocalityVerdict",
    "MaxMinError",
    "OracleResult",
    "PQChoice",
    "ParseError",
    "PreconditionError",
    "ReductionMap",
    "SizeCapError",
    "SolveReport",
    "UnsupportedInstanceError",
    "ValidationError",
    "VertexKind",
    "Walk",
    "WalkStats",
    "assign_values",
    "ball",
    "build_graph",
    "builtin_instance",
    "check_feasible",
    "check_graph",
    "check_walk_lemma",
    "choose_pq",
    "compute_stats",
    "degree_bounds",
    "dump_graph",
    "dump_stats",
    "extract_solution",
    "format_rational",
    "guarantee",
    "locality_check",
    "make_locality_pair",
    "max_k_length_bounded",
    "min_k_length",
    "optimum",
    "parse_assignment",
    "parse_instance",
    "parse_rational",
    "prune_non_contributing",
    "random_instance",
    "scale_back",
    "serialize_assignment",
    "serialize_instance",
    "serialize_oracle_result",
    "simulate_rounds",
    "solve",
    "split_constraints",
    "utility",
    "validate",
    "walk_upper_bound",
]
