"""Structured-matrix to quantum-circuit compiler with a dense verification oracle."""

from ._backend import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
