"""Dense real linear algebra primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype float64 and shape
``(rows, cols)``; :func:`as_matrix` enforces the carrier invariants (2-D,
non-empty, finite). All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import DimensionError, InvalidMatrixError, NotPositiveDefiniteError, SymmetryError

EPS = np.finfo(np.float64).eps

# Relative asymmetry accepted (and removed) before an eigendecomposition.
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds for the discrete decisions made on floating-point data.

    ``rank_rel_tol=None`` means ``eps * max(rows, cols)``, resolved per matrix.
    """

    eig_multiplicity_tol: float = 1e-12
    rank_rel_tol: Optional[float] = None
    range_membership_tol: float = 1e-10
    spd_tol: float = 1e-14

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value is None and name == "rank_rel_tol":
                continue
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {value!r}")

    def rank_tol_for(self, shape) -> float:
        if self.rank_rel_tol is not None:
            return self.rank_rel_tol
        return EPS * max(shape)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOL = ToleranceConfig()


def as_matrix(data, name: str = "matrix") -> np.ndarray:
    M = np.array(data, dtype=np.float64)
    if M.ndim != 2:
        raise InvalidMatrixError(f"{name} must be 2-D, got shape {M.shape}")
    if M.shape[0] < 1 or M.shape[1] < 1:
        raise InvalidMatrixError(f"{name} must have at least one row and column, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidMatrixError(f"{name} has non-finite entries")
    return M


def as_vector(data, n: int, name: str = "x") -> np.ndarray:
    x = np.array(data, dtype=np.float64).reshape(-1)
    if x.shape != (n,):
        raise DimensionError(f"{name} must have length {n}, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise InvalidMatrixError(f"{name} has non-finite entries")
    return x


def sign_normalize(V: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive.

    Ties within a relative 1e-12 go to the lowest index, so vectors like
    (1, -1)/sqrt(2) resolve the same way regardless of rounding in the last bit.
    """
    V = np.array(V, dtype=np.float64, copy=True)
    for j in range(V.shape[1]):
        col = V[:, j]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        k = int(np.flatnonzero(mags >= top * (1.0 - 1e-12))[0])
        if col[k] < 0:
            V[:, j] = -col
    return V


def _singular_values(M: np.ndarray) -> np.ndarray:
    return np.linalg.svd(M, compute_uv=False)


def rank_of(M, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_rel_tol * sigma_max``."""
    M = as_matrix(M)
    s = _singular_values(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_tol_for(M.shape) * s[0]))


def sym_eig_max(M, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a symmetric matrix and an orthonormal eigenspace basis.

    Eigenvalues within ``eig_multiplicity_tol * max(1, |lambda_max|)`` of the
    maximum are treated as equal. Basis columns keep the eigensolver's index
    order and are sign-normalized.
    """
    M = as_matrix(M)
    n, m = M.shape
    if n != m:
        raise DimensionError(f"expected a square matrix, got {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M))))
    asym = float(np.max(np.abs(M - M.T)))
    if asym > SYMMETRY_TOL * scale:
        raise SymmetryError(f"matrix asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:g} relative")
    M = 0.5 * (M + M.T)

    w, V = np.linalg.eigh(M)
    lam = float(w[-1])
    keep = np.abs(w - lam) <= tol.eig_multiplicity_tol * max(1.0, abs(lam))
    return lam, sign_normalize(V[:, keep])


def pseudoinverse(B, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse via a truncated SVD."""
    B = as_matrix(B, "B")
    U, s, Vt = np.linalg.svd(B, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros(B.shape[::-1])
    keep = s > tol.rank_tol_for(B.shape) * s[0]
    return (Vt[keep].T / s[keep]) @ U[:, keep].T


def null_space(B, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ker(B) as columns; shape ``(cols, cols - rank)``."""
    B = as_matrix(B, "B")
    _, s, Vt = np.linalg.svd(B, full_matrices=True)
    if s[0] == 0.0:
        r = 0
    else:
        r = int(np.count_nonzero(s > tol.rank_tol_for(B.shape) * s[0]))
    return sign_normalize(Vt[r:].T)


def cholesky(L, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Upper-triangular ``C`` with ``C.T @ C == L`` for symmetric positive definite ``L``.

    Raises
    ------
    NotPositiveDefiniteError
        With the index of the first pivot not exceeding ``spd_tol * ||L||``.
    """
    L = as_matrix(L, "L")
    n, m = L.shape
    if n != m:
        raise DimensionError(f"L must be square, got {L.shape}")
    scale = float(np.max(np.abs(L)))
    if float(np.max(np.abs(L - L.T))) > SYMMETRY_TOL * max(1.0, scale):
        raise SymmetryError("L is not symmetric")
    floor = tol.spd_tol * np.linalg.norm(L, 2)

    C = np.zeros_like(L)
    for j in range(n):
        d = L[j, j] - C[:j, j] @ C[:j, j]
        if not d > floor:
            raise NotPositiveDefiniteError(j, d)
        C[j, j] = np.sqrt(d)
        C[j, j + 1:] = (L[j, j + 1:] - C[:j, j] @ C[:j, j + 1:]) / C[j, j]
    return C


def cols_indep(D, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, list[int]]:
    """Select ``rank(D)`` linearly independent columns spanning range(D).

    Pivoted QR picks the columns; the indices are returned in ascending order.
    """
    D = as_matrix(D, "D")
    r = rank_of(D, tol)
    _, _, perm = scipy.linalg.qr(D, mode="economic", pivoting=True)
    indices = sorted(int(p) for p in perm[:r])
    return D[:, indices], indices


def stack_operators(blocks) -> np.ndarray:
    """Vertical concatenation, so that ``||D x||^2 == sum_i ||B_i x||^2``."""
    blocks = [as_matrix(b, f"block {i}") for i, b in enumerate(blocks)]
    if not blocks:
        raise ValueError("stack_operators needs at least one block")
    n = blocks[0].shape[1]
    for i, b in enumerate(blocks):
        if b.shape[1] != n:
            raise DimensionError(f"block {i} has {b.shape[1]} columns, expected {n}")
    return np.vstack(blocks)
