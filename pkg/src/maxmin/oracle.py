"""Independent reference computations for testing the solver.

Nothing here touches :mod:`maxmin.solver` or :mod:`maxmin.suppvec`; the
generalized-eigenvalue route goes through a Cholesky factor of ``B^T B``
rather than a pseudoinverse, and the sampler only evaluates the ratio.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DimensionError, DomainError
from .linalg import as_matrix

DEFAULT_SEED = 20240601


def _pair(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"A has {A.shape[1]} columns but B has {B.shape[1]}")
    return A, B


def oracle_generalized_eig(A, B) -> float:
    """sqrt of the largest eigenvalue of the pencil ``A^T A x = lambda B^T B x``."""
    A, B = _pair(A, B)
    G = B.T @ B
    G = 0.5 * (G + G.T)
    if np.linalg.cond(G) > 1e13:
        raise DomainError("B^T B is singular at working precision")
    R = np.linalg.cholesky(G)  # lower, G = R R^T
    W = scipy.linalg.solve_triangular(R, A.T, lower=True)  # R^-1 A^T
    H = W @ W.T  # R^-1 A^T A R^-T
    lam = np.linalg.eigvalsh(0.5 * (H + H.T))[-1]
    return float(np.sqrt(max(lam, 0.0)))


def _ratios(A, B, X):
    bx = np.linalg.norm(B @ X, axis=0)
    ax = np.linalg.norm(A @ X, axis=0)
    ok = bx > 1e-12 * np.linalg.norm(X, axis=0) * max(np.linalg.norm(B, 2), 1e-300)
    r = np.full(X.shape[1], -np.inf)
    r[ok] = ax[ok] / bx[ok]
    return r


def oracle_sphere_sampling(A, B, samples: int = 10_000, refine_steps: int = 50, seed: int = DEFAULT_SEED):
    """Lower bound on the optimum from random directions plus coordinate search.

    Returns ``(value, x)`` where ``x`` is scaled to ``||B x|| = 1`` and the
    value is the ratio actually evaluated at ``x``. ``(0.0, None)`` when no
    sampled direction is feasible.
    """
    A, B = _pair(A, B)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = A.shape[1]
    rng = np.random.default_rng(seed)

    best_r, best_x = -np.inf, None
    for start in range(0, samples, 4096):
        X = rng.standard_normal((n, min(4096, samples - start)))
        r = _ratios(A, B, X)
        k = int(np.argmax(r))
        if r[k] > best_r:
            best_r, best_x = float(r[k]), X[:, k].copy()
    if best_x is None or not np.isfinite(best_r):
        return 0.0, None

    best_x /= np.linalg.norm(best_x)
    step = 0.1
    for _ in range(refine_steps):
        trials = np.concatenate([best_x[:, None] + step * np.eye(n), best_x[:, None] - step * np.eye(n)], axis=1)
        r = _ratios(A, B, trials)
        k = int(np.argmax(r))
        if r[k] > best_r:
            best_r, best_x = float(r[k]), trials[:, k] / np.linalg.norm(trials[:, k])
        else:
            step *= 0.5

    best_x = best_x / np.linalg.norm(B @ best_x)
    return best_r, best_x
