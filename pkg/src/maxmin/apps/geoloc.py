"""Site scoring from winter/summer climate variables.

Winter variables should be large and summer variables small. With the
standardized season matrices A (winter) and B (summer), weights come from
``max ||A x||`` subject to ``||B x||^2 + ||x||^2 <= 1``, and each site is scored
by projecting its point ``(a_i . x, b_i . x)`` onto the direction (1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..errors import DegenerateColumnError, DimensionError, InvalidMatrixError
from ..linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, stack_operators
from ..solver import solve_case1

VARIABLES = ("T", "R", "E")
STD_CONVENTION = "sample (ddof=1)"
SIGN_CONVENTION = "A x positively correlated with the summed standardized winter variables"


@dataclass(frozen=True)
class GeoDataset:
    site_names: list
    winter: np.ndarray
    summer: np.ndarray

    def __post_init__(self):
        winter = as_matrix(self.winter, "winter")
        summer = as_matrix(self.summer, "summer")
        k = len(self.site_names)
        for name, M in (("winter", winter), ("summer", summer)):
            if M.shape != (k, 3):
                raise DimensionError(f"{name} must be {k}x3, got {M.shape}")
        object.__setattr__(self, "site_names", list(self.site_names))
        object.__setattr__(self, "winter", winter)
        object.__setattr__(self, "summer", summer)


@dataclass(frozen=True)
class SiteScore:
    name: str
    ax: float
    bx: float
    score: float


@dataclass(frozen=True)
class GeoScoreReport:
    weights: np.ndarray
    sites: list
    ranking: list
    optimal_value: float
    std_convention: str = STD_CONVENTION
    sign_convention: str = SIGN_CONVENTION

    def to_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "optimal_value": self.optimal_value,
            "sites": [{"site": s.name, "ax": s.ax, "bx": s.bx, "score": s.score} for s in self.sites],
            "ranking": list(self.ranking),
            "metadata": {"std_convention": self.std_convention, "sign_convention": self.sign_convention},
        }


def standardize_columns(M):
    """Center each column and divide by its sample standard deviation.

    Returns ``(Z, means, stds)``.
    """
    M = as_matrix(M)
    if M.shape[0] < 2:
        raise InvalidMatrixError("standardization needs at least two rows")
    means = M.mean(axis=0)
    stds = M.std(axis=0, ddof=1)
    for j, s in enumerate(stds):
        if not s > 1e-14 * max(1.0, float(np.max(np.abs(M[:, j])))):
            raise DegenerateColumnError(j)
    return (M - means) / stds, means, stds


def load_fixture() -> GeoDataset:
    """The packaged 16-site table of January/July climate means."""
    from ..io import read_geo_csv

    with resources.files("maxmin.data").joinpath("table1.csv").open("r", encoding="utf-8") as fh:
        return read_geo_csv(fh)


def solve_geolocation(data: GeoDataset, tol: ToleranceConfig = DEFAULT_TOL) -> GeoScoreReport:
    A, _, _ = standardize_columns(data.winter)
    B, _, _ = standardize_columns(data.summer)
    D = stack_operators([B, np.eye(3)])
    sol = solve_case1(A, D, tol)
    x = sol.solutions[0].copy()

    # Standardized columns have zero mean, so mean(A x) cannot orient x.
    if (A @ x) @ A.sum(axis=1) < 0:
        x = -x

    ax = A @ x
    bx = B @ x
    scores = (ax - bx) / np.sqrt(2.0)
    sites = [SiteScore(n, float(a), float(b), float(s)) for n, a, b, s in zip(data.site_names, ax, bx, scores)]
    order = sorted(range(len(sites)), key=lambda i: -scores[i])
    return GeoScoreReport(
        weights=x,
        sites=sites,
        ranking=[sites[i].name for i in order],
        optimal_value=sol.optimal_value,
    )
