"""Supporting vectors of a finite family of matrices.

The maximum of ``sum_i ||A_i x||^2`` over the unit sphere is the top eigenvalue
of ``sum_i A_i^T A_i`` and the maximizers are the unit vectors of its
eigenspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, sign_normalize, sym_eig_max

_HALF_SQRT2 = np.sqrt(2.0) / 2.0


@dataclass(frozen=True)
class SuppVecResult:
    lambda_max: float
    basis: np.ndarray
    used_special_case: bool = False

    def to_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "basis": self.basis.tolist(),
            "used_special_case": self.used_special_case,
        }


def gram_sum(matrices) -> np.ndarray:
    G = None
    for A in matrices:
        term = A.T @ A
        G = term if G is None else G + term
    return G


def _two_column_closed_form(M: np.ndarray, tol: ToleranceConfig):
    a1, a2 = M[:, 0], M[:, 1]
    n1 = float(np.linalg.norm(a1))
    if abs(n1 - float(np.linalg.norm(a2))) >= tol.eig_multiplicity_tol:
        return None
    c = float(a1 @ a2)
    lam = n1 * n1 + abs(c)
    # The Gram matrix has eigenvalues n1^2 +- c; they count as one eigenvalue
    # under the same rule sym_eig_max applies.
    if 2.0 * abs(c) <= tol.eig_multiplicity_tol * max(1.0, lam):
        basis = np.eye(2)
    elif c > 0:
        basis = np.array([[_HALF_SQRT2], [_HALF_SQRT2]])
    else:
        basis = np.array([[-_HALF_SQRT2], [_HALF_SQRT2]])
    return SuppVecResult(lam, sign_normalize(basis), used_special_case=True)


def supporting_vectors(matrices, tol: ToleranceConfig = DEFAULT_TOL, *, closed_form: bool = True) -> SuppVecResult:
    """Maximal value and maximizing eigenspace of ``sum_i ||A_i x||^2`` on ``||x|| = 1``.

    Parameters
    ----------
    matrices : sequence of array_like
        Non-empty family sharing a column count ``n``.
    tol : ToleranceConfig
    closed_form : bool
        Allow the closed-form path for a single two-column matrix with equal
        column norms. Disable to force the eigendecomposition path.

    Returns
    -------
    SuppVecResult
        ``basis`` has orthonormal columns spanning the maximizing eigenspace;
        the supporting vectors are its unit vectors.
    """
    if isinstance(matrices, np.ndarray) and matrices.ndim == 2:
        matrices = [matrices]
    matrices = [as_matrix(A, f"matrix {i}") for i, A in enumerate(matrices)]
    if not matrices:
        raise ValueError("supporting_vectors needs at least one matrix")
    n = matrices[0].shape[1]
    for i, A in enumerate(matrices):
        if A.shape[1] != n:
            raise DimensionError(f"matrix {i} has {A.shape[1]} columns, expected {n}")

    if closed_form and len(matrices) == 1 and n == 2:
        result = _two_column_closed_form(matrices[0], tol)
        if result is not None:
            return result

    G = gram_sum(matrices)
    if not np.any(G):
        return SuppVecResult(0.0, np.eye(n))
    lam, basis = sym_eig_max(G, tol)
    return SuppVecResult(max(lam, 0.0), basis)
