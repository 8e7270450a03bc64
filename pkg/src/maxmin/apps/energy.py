"""Field-focality versus stored-energy trade-off.

Maximize ``||E1 psi||`` while keeping ``||E2 psi||`` and ``psi^T L psi`` small.
Writing ``L = C^T C`` turns the energy into ``||C psi||^2``, so both costs stack
into one operator ``D = [E2; C]`` with trivial kernel.
"""

from __future__ import annotations

from ..errors import DimensionError
from ..linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, cholesky, stack_operators
from ..solver import MaxminSolution, solve_case1


def energy_operator(E2, L, tol: ToleranceConfig = DEFAULT_TOL):
    E2 = as_matrix(E2, "E2")
    L = as_matrix(L, "L")
    if L.shape[0] != E2.shape[1]:
        raise DimensionError(f"L is {L.shape} but E2 has {E2.shape[1]} columns")
    return stack_operators([E2, cholesky(L, tol)])


def solve_quadratic_energy(E1, E2, L, tol: ToleranceConfig = DEFAULT_TOL) -> MaxminSolution:
    """Maximize ``||E1 psi||`` subject to ``||E2 psi||^2 + psi^T L psi <= 1``."""
    E1 = as_matrix(E1, "E1")
    D = energy_operator(E2, L, tol)
    if E1.shape[1] != D.shape[1]:
        raise DimensionError(f"E1 has {E1.shape[1]} columns, expected {D.shape[1]}")
    return solve_case1(E1, D, tol)
