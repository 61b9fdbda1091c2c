# maninsigma/__init__.py
"""Poisson-Lie sigma models built from Manin triples."""

__version__ = "0.1.0"

from .lie_core import ManinTriple, StructureConstants, assemble_double, validate_triple  # noqa: F401
from .poisson import bivector_at, jacobi_residual, linearize  # noqa: F401
from .sigma_model import FieldConfig, WorldsheetGrid, action_S2, eom_residuals  # noqa: F401
