"""Exact interpolation t-Push TASEP and interpolation Macdonald/ASEP polynomials."""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
