"""Exact verification engine for the commuting integral transformations I(alpha)."""

from ._scalar import BACKEND, Q
from .qkernel import ParamPoint, mu, qpoch, qpoch_multi, sample_generic_point
from .series import ConeSeries, Truncation
from .xform import OperatorMatrix, operator_matrix, monomial_image
from .eigen import EigenResult, eigenfunction, eigenvalue

__version__ = "0.1.0"
