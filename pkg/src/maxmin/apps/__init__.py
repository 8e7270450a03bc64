from .energy import energy_operator, solve_quadratic_energy
from .geoloc import GeoDataset, GeoScoreReport, SiteScore, load_fixture, solve_geolocation, standardize_columns

__all__ = [
    "GeoDataset",
    "GeoScoreReport",
    "SiteScore",
    "energy_operator",
    "load_fixture",
    "solve_geolocation",
    "solve_quadratic_energy",
    "standardize_columns",
]
