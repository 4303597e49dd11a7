"""Python access to the robinbif core."""

import json

from ._core import (
    NumericalError,
    ValidationError,
    curves,
    eigenvalue,
    secondary_loci,
    spectrum_csv,
    wavenumber,
)
from . import _core


def coefficients(n, k):
    """Closed-form reduced coefficients at the Neumann double point (n, k)."""
    return json.loads(_core._coefficients(n, k))


def diagram(n, k, nu=0.01, mu0=None, grid=64):
    """Branch families at a double point (mu0=None) or a simple point."""
    return json.loads(_core._diagram(n, k, nu, -1.0 if mu0 is None else mu0, grid))


__all__ = [
    "NumericalError",
    "ValidationError",
    "coefficients",
    "curves",
    "diagram",
    "eigenvalue",
    "secondary_loci",
    "spectrum_csv",
    "wavenumber",
]
