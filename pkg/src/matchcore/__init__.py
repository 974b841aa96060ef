"""Approximate-core profit sharing for weighted matching games.

Agents sit on the vertices of a weighted graph; an edge is a possible
pairwise trade worth its weight, and a coalition is worth its best
matching. On bipartite graphs the optimal cover of the matching LP is
an exact core allocation; on general graphs the core may be empty, and
this package computes the next best thing: a payout within a factor
2/3 (and usually better, per vertex) of every coalition's worth, never
exceeding the grand coalition's worth.

All arithmetic is exact: integer edge weights, integer duals on the
doubled bipartite graph, `fractions.Fraction` everywhere else. Every
run is certified by complementary slackness, and the `verify` module
cross-checks results against brute-force enumeration at desk scale.
"""

from .bipartite import (
    DoubledGraph,
    PrimalDualCertificate,
    check_certificate,
    double_graph,
    matched_weight,
    solve_bipartite,
)
from .errors import BoundExceeded, InstanceFormatError, InvariantViolation, MatchcoreError
from .halfint import (
    FractionalComponents,
    HalfIntegralSolution,
    OddCycle,
    decompose_components,
    fold_solution,
    normalize,
    solution_weight,
)
from .instances import (
    GameInstance,
    gen_gap_family,
    gen_odd_cycle,
    gen_random,
    load_instance,
    parse_instance,
    serialize_instance,
)
from .mechanism import (
    CycleAnalysis,
    CycleMatching,
    ImputationResult,
    PipelineTrace,
    ScalingProfile,
    analyze_cycle,
    audit_pipeline,
    heaviest_tiebreak,
    run_mechanism,
    run_pipeline,
    scaling_profile,
)
from .rationals import format_fraction, parse_fraction
from .verify import (
    CoalitionReport,
    CoalitionViolation,
    GapReport,
    check_core,
    coalition_worth_table,
    guaranteed_alpha,
    integrality_gap,
    odd_girth,
    worth_bruteforce,
)

from . import bipartite as _bipartite

#: Which matching kernel was selected at import: "c" or "py".
KERNEL_BACKEND = _bipartite.DEFAULT_BACKEND

__version__ = "0.1.0"

__all__ = [
    "BoundExceeded",
    "CoalitionReport",
    "CoalitionViolation",
    "CycleAnalysis",
    "CycleMatching",
    "DoubledGraph",
    "FractionalComponents",
    "GameInstance",
    "GapReport",
    "HalfIntegralSolution",
    "ImputationResult",
    "InstanceFormatError",
    "InvariantViolation",
    "KERNEL_BACKEND",
    "MatchcoreError",
    "OddCycle",
    "PipelineTrace",
    "PrimalDualCertificate",
    "ScalingProfile",
    "analyze_cycle",
    "audit_pipeline",
    "check_certificate",
    "check_core",
    "coalition_worth_table",
    "decompose_components",
    "double_graph",
    "fold_solution",
    "format_fraction",
    "gen_gap_family",
    "gen_odd_cycle",
    "gen_random",
    "guaranteed_alpha",
    "heaviest_tiebreak",
    "integrality_gap",
    "load_instance",
    "matched_weight",
    "normalize",
    "odd_girth",
    "parse_fraction",
    "parse_instance",
    "run_mechanism",
    "run_pipeline",
    "scaling_profile",
    "serialize_instance",
    "solution_weight",
    "solve_bipartite",
    "worth_bruteforce",
    "__version__",
]
