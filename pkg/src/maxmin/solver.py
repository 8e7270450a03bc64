"""Exact solver for ``max ||A x||`` subject to ``||B x|| <= 1``.

A solution exists exactly when ker(B) is contained in ker(A). With a trivial
kernel the problem becomes a supporting-vector problem for ``A B^+`` restricted
to range(B) (:func:`solve_case1`). Otherwise B is replaced by a set of
independent columns spanning its range, the reduced problem is solved, and
the reduced solutions are padded with zeros back to length n (:func:`solve`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError, KernelNotTrivialError, NoSolutionError, RangeFilterError
from .linalg import (
    DEFAULT_TOL,
    EPS,
    ToleranceConfig,
    as_matrix,
    as_vector,
    cols_indep,
    null_space,
    pseudoinverse,
    stack_operators,
)
from .suppvec import supporting_vectors

__all__ = [
    "MaxminSolution",
    "existence_check",
    "ratio_value",
    "solve",
    "solve_case1",
    "stack_operators",
]

CASE1 = "case1"
CASE2 = "case2"


@dataclass(frozen=True)
class MaxminSolution:
    """Optimal value and representative maximizers.

    The full argmax is the sign-closed span of ``solutions`` intersected with
    ``{x : ||B x|| = 1}``; one representative per eigenbasis direction is
    listed, each followed by its negation.
    """

    optimal_value: float
    solutions: list
    case_used: str
    lambda_max: float
    selected_indices: list = field(default_factory=list)
    y_candidates_total: int = 0
    y_candidates_accepted: int = 0
    used_fallback: bool = False
    degenerate: bool = False
    tolerances: dict = field(default_factory=dict)

    @property
    def x0(self) -> np.ndarray:
        return self.solutions[0]

    def diagnostics(self) -> dict:
        return {
            "y_candidates_total": self.y_candidates_total,
            "y_candidates_accepted": self.y_candidates_accepted,
            "used_fallback": self.used_fallback,
            "degenerate": self.degenerate,
            "representatives": "sign-closed eigenbasis directions; full solution set is their span on ||Bx|| = 1",
        }

    def to_dict(self) -> dict:
        return {
            "optimal_value": self.optimal_value,
            "solutions": [x.tolist() for x in self.solutions],
            "case_used": self.case_used,
            "selected_indices": list(self.selected_indices),
            "lambda_max": self.lambda_max,
            "tolerances": dict(self.tolerances),
            "diagnostics": self.diagnostics(),
        }


def _pair(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"A has {A.shape[1]} columns but B has {B.shape[1]}")
    return A, B


def _sign_closed(xs):
    out = []
    for x in xs:
        out.append(x)
        out.append(0.0 - x)  # no negative zeros
    return out


def existence_check(A, B, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff ker(B) is contained in ker(A), i.e. the problem has a maximum."""
    A, B = _pair(A, B)
    K = null_space(B, tol)
    if K.shape[1] == 0:
        return True
    bound = tol.range_membership_tol * max(1.0, float(np.linalg.norm(A, 2)))
    return bool(np.all(np.linalg.norm(A @ K, axis=0) <= bound))


def solve_case1(A, B, tol: ToleranceConfig = DEFAULT_TOL) -> MaxminSolution:
    """Solve the problem when ker(B) = {0}.

    Supporting vectors y of ``A B^+`` that lie in range(B) give the solutions
    ``x = B^+ y``; then ``||B x|| = ||y|| = 1`` and ``||A x|| = ||A B^+ y||``.
    """
    A, B = _pair(A, B)
    n = A.shape[1]
    if null_space(B, tol).shape[1] != 0:
        raise KernelNotTrivialError("ker(B) != {0}; use solve() for the quotient reduction")
    tols = tol.as_dict()

    if not np.any(A):
        return MaxminSolution(0.0, [np.zeros(n)], CASE1, 0.0, degenerate=True, tolerances=tols)

    Bp = pseudoinverse(B, tol)
    P = B @ Bp
    sv = supporting_vectors([A @ Bp], tol)
    Y = sv.basis

    def in_range(y):
        return np.linalg.norm(y - P @ y) <= tol.range_membership_tol * np.linalg.norm(y)

    accepted = [Y[:, j] for j in range(Y.shape[1]) if in_range(Y[:, j])]
    used_fallback = False
    if not accepted:
        used_fallback = True
        for j in range(Y.shape[1]):
            py = P @ Y[:, j]
            norm = np.linalg.norm(py)
            if norm > 0 and in_range(py / norm):
                accepted.append(py / norm)
    if not accepted:
        raise RangeFilterError(
            f"none of {Y.shape[1]} supporting vectors of A B^+ lies in range(B), "
            f"even after projection (range_membership_tol={tol.range_membership_tol:g})"
        )

    xs = [Bp @ y for y in accepted]
    return MaxminSolution(
        optimal_value=float(np.sqrt(sv.lambda_max)),
        solutions=_sign_closed(xs),
        case_used=CASE1,
        lambda_max=sv.lambda_max,
        y_candidates_total=Y.shape[1],
        y_candidates_accepted=len(accepted),
        used_fallback=used_fallback,
        tolerances=tols,
    )


def solve(A, B, tol: ToleranceConfig = DEFAULT_TOL) -> MaxminSolution:
    """Solve ``max ||A x||`` subject to ``||B x|| <= 1`` for any real A, B.

    Raises
    ------
    NoSolutionError
        If ker(B) is not contained in ker(A): ``||A x||`` is then unbounded on
        the feasible set.
    """
    A, B = _pair(A, B)
    if not existence_check(A, B, tol):
        raise NoSolutionError("ker(B) not contained in ker(A)")
    if null_space(B, tol).shape[1] == 0:
        return solve_case1(A, B, tol)

    Br, indices = cols_indep(B, tol)
    Ar = A[:, indices]
    reduced = solve_case1(Ar, Br, tol)
    n = A.shape[1]
    xs = []
    for y in reduced.solutions:
        x = np.zeros(n)
        x[indices] = y
        xs.append(x)
    return MaxminSolution(
        optimal_value=reduced.optimal_value,
        solutions=xs,
        case_used=CASE2,
        lambda_max=reduced.lambda_max,
        selected_indices=indices,
        y_candidates_total=reduced.y_candidates_total,
        y_candidates_accepted=reduced.y_candidates_accepted,
        used_fallback=reduced.used_fallback,
        degenerate=reduced.degenerate,
        tolerances=reduced.tolerances,
    )


def ratio_value(A, B, x) -> float:
    """``||A x|| / ||B x||``; raises :class:`DomainError` when ``B x`` vanishes."""
    A, B = _pair(A, B)
    x = as_vector(x, A.shape[1])
    bx = float(np.linalg.norm(B @ x))
    if bx <= EPS * float(np.linalg.norm(B, 2)) * float(np.linalg.norm(x)):
        raise DomainError("B x = 0, ratio undefined")
    return float(np.linalg.norm(A @ x)) / bx
