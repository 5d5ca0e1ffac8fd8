"""Numerical certification of the classical r-matrix structure of the elliptic
Krichever Lax differential in Tyurin parameters."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.1.0"

from .lax import lax, laurent_at, residue_at_origin
from .phase_space import Chart, ExtendedPhasePoint, gauge_act, moment_map, new_point, rescale, sample
from .poisson import bracket, bracket_tensor, involution_check
from .rmatrix import r_scalar, r_tensor
from .theta import CurveModulus, log_derivative_E, theta

__all__ = [
    "Chart", "CurveModulus", "ExtendedPhasePoint", "bracket", "bracket_tensor", "gauge_act",
    "involution_check", "lax", "laurent_at", "log_derivative_E", "moment_map", "new_point",
    "r_scalar", "r_tensor", "rescale", "residue_at_origin", "sample", "theta",
]
