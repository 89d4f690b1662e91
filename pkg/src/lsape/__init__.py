"""Linear sum assignment with edition: substitutions, removals and insertions.

The main entry point is :func:`solve`, a primal-dual Hungarian solver
that works on the ``(n+1) x (m+1)`` edit cost matrix directly.
"""

from .core import (
    AssignmentStatus,
    DualVariables,
    EditCostMatrix,
    EpsilonAssignment,
    SLsapeInstance,
    assignment_cost,
    build_slsape,
    check_slackness,
    dual_feasible,
    dual_objective,
    from_matrix,
    from_slsape_bijection,
    reduced_costs,
    slsape_cost,
    to_matrix,
    to_slsape_bijection,
    validate_assignment,
)
from .errors import (
    ForbiddenCellError,
    InvalidAssignmentError,
    InvalidInstanceError,
    InvariantViolation,
    LsapeError,
    SizeLimitError,
)
from .generators import GeneratorSpec, generate
from .hungarian import AugmentResult, SolveResult, SolveStats, apply_augmenting_path, augment, preprocess, solve
from .oracle import brute_force_optimum, count_assignments, count_bounds, enumerate_assignments
from .reference import solve_lsap, solve_via_slsape

__version__ = "0.1.0"
