"""
Exhaustive oracles for small instances

These enumerations are the reference values the branch-and-bound solver is
tested against:
- local_bound_bruteforce / local_bound_witness: L(M) = max_v ||vM||_1
- lk_bruteforce: L_k(M) over every assignment in W_{n,k}
- cut_norm_bruteforce: C(M) over {0,1} row and column selections

All arithmetic is exact int64; enumeration is vectorized in chunks.
"""

from typing import Iterator, Tuple
import logging

import numpy as np

from ..core import WitnessMatrix
from ..errors import SizeCapError

logger = logging.getLogger(__name__)

LOCAL_SIDE_CAP = 30
LK_ENUMERATION_CAP = 10 ** 8
CUT_ENUMERATION_CAP = 10 ** 8
CHUNK = 1 << 15


def _chunks(total: int) -> Iterator[np.ndarray]:
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(start + CHUNK, total), dtype=np.int64)


def _sign_rows(indices: np.ndarray, length: int) -> np.ndarray:
    """+-1 vectors of the given length with the first entry fixed to +1."""
    shifts = np.arange(length - 1, dtype=np.int64)
    bits = (indices[:, None] >> shifts) & 1
    signs = 1 - 2 * bits
    return np.hstack([np.ones((len(indices), 1), dtype=np.int64), signs])


def _sgn(values: np.ndarray) -> np.ndarray:
    return np.where(values >= 0, 1, -1).astype(np.int64)


def local_bound_witness(matrix: WitnessMatrix) -> Tuple[int, np.ndarray, np.ndarray]:
    """
    Compute L(M) with optimal +-1 vectors a (rows) and b (columns).

    The enumeration runs over the smaller side of M (L(M) = L(M^T)) with the
    first sign fixed, since v and -v give the same norm.

    Args:
        matrix: Integer witness matrix whose smaller side is at most 30

    Returns:
        (value, a, b) with value = sum_{x,y} M_{x,y} a_x b_y

    Raises:
        SizeCapError: If both sides exceed 30
    """
    entries = matrix.entries
    transposed = matrix.n > matrix.m
    if transposed:
        entries = entries.T
    side = entries.shape[0]
    if side > LOCAL_SIDE_CAP:
        raise SizeCapError(f"Local bound enumeration limited to {LOCAL_SIDE_CAP} rows, got {side}")

    best_value = -1
    best_signs = None
    for indices in _chunks(2 ** (side - 1)):
        signs = _sign_rows(indices, side)
        values = np.abs(signs @ entries).sum(axis=1)
        top = int(np.argmax(values))
        if int(values[top]) > best_value:
            best_value = int(values[top])
            best_signs = signs[top].copy()

    other = _sgn(best_signs @ entries)
    if transposed:
        a, b = other, best_signs
    else:
        a, b = best_signs, other
    return best_value, a, b


def local_bound_bruteforce(matrix: WitnessMatrix) -> int:
    """
    Exact local bound L(M) = max over a, b in {-1,+1} of sum M_{x,y} a_x b_y.

    Examples:
        >>> local_bound_bruteforce(gen_family(2))
        2
    """
    value, _, _ = local_bound_witness(matrix)
    return value


def lk_bruteforce(matrix: WitnessMatrix, k: int) -> int:
    """
    Exact L_k(M) by enumerating every assignment of rows to k groups.

    Args:
        matrix: Integer witness matrix
        k: Group count, k >= 1

    Raises:
        SizeCapError: If k^n exceeds 10^8

    Examples:
        >>> lk_bruteforce(gen_family(2), 2)
        4
    """
    if k < 1:
        raise ValueError(f"Group count must be positive, got {k}")
    n = matrix.n
    total = k ** n
    if total > LK_ENUMERATION_CAP:
        raise SizeCapError(f"k^n = {k}^{n} exceeds the enumeration cap {LK_ENUMERATION_CAP}")
    entries = matrix.entries
    powers = np.array([k ** i for i in range(n)], dtype=np.int64)
    best = 0
    for indices in _chunks(total):
        digits = (indices[:, None] // powers) % k
        values = np.zeros(len(indices), dtype=np.int64)
        for g in range(k):
            members = (digits == g).astype(np.int64)
            values += np.abs(members @ entries).sum(axis=1)
        best = max(best, int(values.max()))
    return best


def cut_norm_bruteforce(matrix: WitnessMatrix) -> int:
    """
    Exact cut norm C(M) = max over a in {0,1}^n, b in {0,1}^m of sum M_{x,y} a_x b_y.

    For a fixed selection on one side the best selection on the other side
    keeps exactly the positive partial sums, so only the smaller side is
    enumerated.

    Raises:
        SizeCapError: If 2^(n+m) exceeds 10^8
    """
    if 2 ** (matrix.n + matrix.m) > CUT_ENUMERATION_CAP:
        raise SizeCapError(f"2^(n+m) = 2^{matrix.n + matrix.m} exceeds the enumeration cap {CUT_ENUMERATION_CAP}")
    entries = matrix.entries if matrix.n <= matrix.m else matrix.entries.T
    side = entries.shape[0]
    shifts = np.arange(side, dtype=np.int64)
    best = 0
    for indices in _chunks(2 ** side):
        selection = (indices[:, None] >> shifts) & 1
        partial = selection @ entries
        values = np.clip(partial, 0, None).sum(axis=1)
        best = max(best, int(values.max()))
    return best
