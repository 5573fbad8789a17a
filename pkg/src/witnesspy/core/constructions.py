"""
Matrix constructions used across the toolkit

- make_doubled: the stacked matrix M' = (M; -M)
- gen_family: the k x 2^(k-1) sign family M^k whose first members are
  [[1]] and the CHSH matrix
- integerize: scaled truncation of a real matrix to an integer witness
"""

import logging

import numpy as np

from ..errors import MatrixOverflowError, SizeCapError
from .matrices import INT64_MAX, RealMatrix, WitnessMatrix

logger = logging.getLogger(__name__)

FAMILY_MAX_K = 20


def make_doubled(matrix: WitnessMatrix) -> WitnessMatrix:
    """
    Stack a matrix on top of its negation.

    Row x of the result is M_x and row x + n is -M_x, so L_2(M') = L(M') = 2 L(M).

    Examples:
        >>> make_doubled(WitnessMatrix.from_rows([[1, 1], [1, -1]])).tolist()
        [[1, 1], [1, -1], [-1, -1], [-1, 1]]
    """
    return WitnessMatrix(np.vstack([matrix.entries, -matrix.entries]))


def gen_family(k: int) -> WitnessMatrix:
    """
    Build the k x 2^(k-1) matrix M^k with M^k_{i,j} = (-1)^floor(j / 2^(k-i-1)).

    Rows and columns are indexed from zero, so the first row is all ones and
    the last row alternates. Distinct rows are orthogonal.

    Args:
        k: Family index, 1 <= k <= 20

    Raises:
        SizeCapError: If k is outside [1, 20]

    Examples:
        >>> gen_family(2).tolist()
        [[1, 1], [1, -1]]
    """
    if not isinstance(k, (int, np.integer)) or k < 1 or k > FAMILY_MAX_K:
        raise SizeCapError(f"Family index must be in [1, {FAMILY_MAX_K}], got {k}")
    k = int(k)
    columns = np.arange(2 ** (k - 1), dtype=np.int64)
    rows = []
    for i in range(k):
        bits = (columns >> (k - i - 1)) & 1
        rows.append(1 - 2 * bits)
    return WitnessMatrix(np.array(rows, dtype=np.int64))


def integerize(matrix: RealMatrix, scale: int) -> WitnessMatrix:
    """
    Multiply a real matrix by an integer scale and truncate toward zero.

    Args:
        matrix: Real matrix, typically a Gilbert residual
        scale: Positive integer scale (1000 for the published witness)

    Returns:
        WitnessMatrix with entries trunc(scale * R_{x,y})

    Raises:
        ValueError: If scale is not a positive integer
        MatrixOverflowError: If the scaled entries leave the 64-bit range

    Examples:
        >>> integerize(RealMatrix.from_rows([[0.4377, -1.2]]), 1000).tolist()
        [[437, -1200]]
    """
    if not isinstance(scale, (int, np.integer)) or scale < 1:
        raise ValueError(f"Scale must be a positive integer, got {scale!r}")
    scaled = matrix.entries * float(scale)
    if float(np.abs(scaled).max()) >= float(INT64_MAX):
        raise MatrixOverflowError(f"Scaled entries exceed the signed 64-bit range (scale {scale})")
    truncated = np.trunc(scaled).astype(np.int64)
    result = WitnessMatrix(truncated)
    logger.debug(f"Integerized {matrix!r} with scale {scale} into {result!r}")
    return result
