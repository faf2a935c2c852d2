"""Maximum-length labeling walks on grid graphs P_m x P_n."""

from gridwalk.bounds import Exactness, TheoremStatus, lower_target, mcneil, theorem_status, upper_bound
from gridwalk.constructions import check_identity, construct_optimal
from gridwalk.exact_solver import SolveResult, resolve_interval, solve_exact
from gridwalk.grid_core import GridDims, Labeling, parse_labeling, walk_length

__version__ = "1.0.0"

__all__ = [
    "Exactness",
    "GridDims",
    "Labeling",
    "SolveResult",
    "TheoremStatus",
    "check_identity",
    "construct_optimal",
    "lower_target",
    "mcneil",
    "parse_labeling",
    "resolve_interval",
    "solve_exact",
    "theorem_status",
    "upper_bound",
    "walk_length",
]
