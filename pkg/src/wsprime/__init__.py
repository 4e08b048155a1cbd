"""Finite commutative-algebra workbench for weakly S-prime submodules."""

from wsprime.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
