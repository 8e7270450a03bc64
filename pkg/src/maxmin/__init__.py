"""Exact solutions of ``max ||A x||`` subject to ``||B x|| <= 1``."""

from .errors import MaxminError, NoSolutionError
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    cholesky,
    cols_indep,
    null_space,
    pseudoinverse,
    rank_of,
    stack_operators,
    sym_eig_max,
)
from .solver import MaxminSolution, existence_check, ratio_value, solve, solve_case1
from .suppvec import SuppVecResult, supporting_vectors

__all__ = [
    "DEFAULT_TOL",
    "MaxminError",
    "MaxminSolution",
    "NoSolutionError",
    "SuppVecResult",
    "ToleranceConfig",
    "cholesky",
    "cols_indep",
    "existence_check",
    "null_space",
    "pseudoinverse",
    "rank_of",
    "ratio_value",
    "solve",
    "solve_case1",
    "stack_operators",
    "supporting_vectors",
    "sym_eig_max",
]
