"""Geodesic connections from linear systems, connection Wronskians and
Nevanlinna-theoretic checks for polynomial holomorphic curves."""

__version__ = "0.1.0"

from .connection import LinearSystemBasis, solve_christoffel
from .curve import ProjectiveCurve, connection_wronskian
from .nevanlinna import RadiusGrid
from .theorems import smt_coefficient, smt_verify, uniqueness_thresholds

__all__ = [
    "__version__",
    "LinearSystemBasis",
    "ProjectiveCurve",
    "RadiusGrid",
    "connection_wronskian",
    "smt_coefficient",
    "smt_verify",
    "solve_christoffel",
    "uniqueness_thresholds",
]
