"""
Matrix data model for linear witnesses

This module provides the two matrix types used across the toolkit:
- WitnessMatrix: integer coefficient matrix M of a linear witness
- RealMatrix: real matrix holding correlations E_{x,y} or Gilbert residuals

Both are immutable after construction; the wrapped numpy arrays are
read-only so instances can be shared freely between threads and processes.
"""

from dataclasses import dataclass
from typing import Any, Iterable, Sequence, Tuple

import numpy as np

from ..errors import MatrixOverflowError, MatrixParseError

INT64_MAX = np.iinfo(np.int64).max
INT64_MIN = np.iinfo(np.int64).min


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class WitnessMatrix:
    """
    Integer n x m coefficient matrix of a linear witness.

    Rows index preparations x, columns index measurement settings y.
    Construction enforces the overflow invariant: every entry fits a signed
    64-bit integer and so does n * m * max|entry|, which bounds every norm
    computed by the exact solvers.

    Examples:
        >>> chsh = WitnessMatrix.from_rows([[1, 1], [1, -1]])
        >>> chsh.shape
        (2, 2)
        >>> chsh.sum_S()
        2
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.entries)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError(f"Witness matrix must be 2-dimensional and non-empty, got shape {array.shape}")
        if array.dtype.kind not in "iu":
            raise ValueError(f"Witness matrix entries must be integers, got dtype {array.dtype}")
        if array.dtype.kind == "u" and array.size and int(array.max()) > INT64_MAX:
            raise MatrixOverflowError("Entry exceeds the signed 64-bit range")
        array = np.array(array, dtype=np.int64)
        self._check_bound(array)
        object.__setattr__(self, "entries", _freeze(array))

    @staticmethod
    def _check_bound(array: np.ndarray) -> None:
        peak = max(abs(int(array.max())), abs(int(array.min())))
        if peak > INT64_MAX:
            raise MatrixOverflowError("Entry -2^63 cannot be negated within 64 bits")
        if array.shape[0] * array.shape[1] * peak > INT64_MAX:
            raise MatrixOverflowError(
                f"Bound n*m*max|entry| = {array.shape[0] * array.shape[1] * peak} "
                "does not fit a signed 64-bit integer"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]]) -> "WitnessMatrix":
        """
        Build a matrix from nested Python integers, checking the 64-bit range.

        Args:
            rows: Iterable of rows, each an iterable of integers

        Returns:
            WitnessMatrix holding the rows

        Raises:
            MatrixParseError: If rows are ragged or empty
            MatrixOverflowError: If an entry leaves the signed 64-bit range
        """
        table = [[int(value) for value in row] for row in rows]
        if not table or not table[0]:
            raise MatrixParseError("Matrix must have at least one row and one column")
        width = len(table[0])
        for index, row in enumerate(table):
            if len(row) != width:
                raise MatrixParseError(f"Row {index + 1} has {len(row)} entries, expected {width}")
            for value in row:
                if value > INT64_MAX or value < INT64_MIN:
                    raise MatrixOverflowError(f"Entry {value} out of signed 64-bit range")
        return cls(np.array(table, dtype=np.int64))

    @property
    def n(self) -> int:
        """Row count (preparations)."""
        return int(self.entries.shape[0])

    @property
    def m(self) -> int:
        """Column count (measurement settings)."""
        return int(self.entries.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n, self.m

    def max_abs(self) -> int:
        return int(np.abs(self.entries).max())

    def manhattan(self) -> int:
        """Sum of absolute values of all entries."""
        return int(np.abs(self.entries).sum())

    def sum_S(self) -> int:
        """
        Sum of all entries, S(M).

        Examples:
            >>> WitnessMatrix.from_rows([[1, 1], [1, -1]]).sum_S()
            2
        """
        return int(self.entries.sum(dtype=np.int64))

    def tolist(self) -> list:
        return self.entries.tolist()

    def as_real(self) -> "RealMatrix":
        return RealMatrix(self.entries.astype(np.float64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WitnessMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.shape, self.entries.tobytes()))

    def __str__(self) -> str:
        return f"WitnessMatrix({self.n}x{self.m})"

    def __repr__(self) -> str:
        return f"WitnessMatrix(n={self.n}, m={self.m}, max|entry|={self.max_abs()})"


@dataclass(frozen=True, eq=False)
class RealMatrix:
    """
    Real n x m matrix with finite double-precision entries.

    Holds correlation matrices E_{x,y}, noisy families E_{x,y}(eta) and the
    residuals produced by the Gilbert search.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        array = np.array(self.entries, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError(f"Real matrix must be 2-dimensional and non-empty, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("Real matrix entries must all be finite")
        object.__setattr__(self, "entries", _freeze(array))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "RealMatrix":
        return cls(np.array([[float(value) for value in row] for row in rows], dtype=np.float64))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def m(self) -> int:
        return int(self.entries.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n, self.m

    def tolist(self) -> list:
        return self.entries.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.shape, self.entries.tobytes()))

    def __str__(self) -> str:
        return f"RealMatrix({self.n}x{self.m})"

    def __repr__(self) -> str:
        return f"RealMatrix(n={self.n}, m={self.m})"


def as_array(matrix: Any) -> np.ndarray:
    """Return the entry array of a WitnessMatrix, RealMatrix or array-like."""
    if isinstance(matrix, (WitnessMatrix, RealMatrix)):
        return matrix.entries
    return np.asarray(matrix)


def is_integer_matrix(matrix: Any) -> bool:
    return isinstance(matrix, WitnessMatrix) or np.asarray(matrix).dtype.kind in "iu"
