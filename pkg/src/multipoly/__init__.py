"""Exact binary polynomial optimization over beta-acyclic hypergraphs."""

from .acyclicity import BetaCycle, NestPointSequence, find_beta_cycle, is_beta_acyclic, is_nest_point, nest_point_sequence
from .cuts import EriSpec, RunningIntersectionOrdering, dense_facet_family, enumerate_eri, eri_inequality, redundancy_filter, rip_ordering
from .errors import (
    AmbiguousF,
    BadParameter,
    BoundViolation,
    HypothesisViolated,
    InvalidW,
    InvariantViolation,
    MultipolyError,
    NotAChain,
    NotANestPointSequence,
    NotBetaAcyclic,
    ParseError,
    RequiresScaling,
    SizeLimitExceeded,
    UnknownNode,
)
from .expansion import EdgeStructure, ExpandedHypergraph, edge_structure, expand, is_expanded
from .formulation import (
    ExtendedFormulation,
    InequalitySystem,
    LinearInequality,
    VariableId,
    beta_acyclic_formulation,
    partial_formulation,
    pointed_system,
    standard_linearization,
    triangle_inequalities,
    var,
)
from .hypergraph import Hypergraph, load, parse, serialize
from .lp import ExactLP, LpSolution, fourier_motzkin_eliminate, solve_max
from .lpfile import emit_lp, parse_lp
from .oracle import (
    MultilinearPoint,
    brute_force_max,
    check_coefficient_sum,
    check_decomposition,
    check_facet,
    check_validity,
    enumerate_points,
)

__version__ = "0.1.0"
