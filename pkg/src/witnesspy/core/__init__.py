"""
Witness-matrix data model, file I/O and matrix constructions

This package provides:
- WitnessMatrix / RealMatrix immutable matrix types
- MatrixIO for the plain-text matrix format
- make_doubled, gen_family and integerize constructions
"""

from .matrices import RealMatrix, WitnessMatrix
from .matrix_io import MatrixIO, load_matrix
from .constructions import gen_family, integerize, make_doubled


def sum_S(matrix: WitnessMatrix) -> int:
    """Sum of all entries of a witness matrix."""
    return matrix.sum_S()


__all__ = [
    "WitnessMatrix",
    "RealMatrix",
    "MatrixIO",
    "load_matrix",
    "sum_S",
    "make_doubled",
    "gen_family",
    "integerize",
]
