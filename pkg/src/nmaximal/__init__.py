"""Exact computation of n-maximal subalgebras of small Lie algebras over GF(p) and Q."""

from .exactcore import FieldSpec, Matrix, Subspace
from .liekernel import LieAlgebra

__all__ = ["FieldSpec", "Matrix", "Subspace", "LieAlgebra"]
