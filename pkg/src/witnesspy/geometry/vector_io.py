"""
Vector file reading and writing

Format: an optional first line "n", then one vector per line as three decimal
floats. Files holding only coordinates (three per vector, in any line
layout, as in tabulated packing databases) are accepted too.
"""

from pathlib import Path
from typing import List, Union
import logging

import numpy as np

from ..errors import MatrixParseError, VectorNormalizationError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RENORMALIZE_TOLERANCE = 1e-6
# deviations below this are float noise and are fixed silently
SILENT_TOLERANCE = 1e-12


def _read_tokens(path: PathLike) -> List[List[str]]:
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Vector file not found: {file_path}")
    with open(file_path, "r", encoding="utf-8", newline="") as handle:
        lines = [line.split() for line in handle.read().splitlines()]
    return [fields for fields in lines if fields]


def load_vectors(path: PathLike) -> np.ndarray:
    """
    Load unit vectors, renormalizing small deviations.

    Args:
        path: Vector file

    Returns:
        n x 3 array of unit vectors

    Raises:
        FileNotFoundError: If the file does not exist
        MatrixParseError: If the layout or a number is malformed
        VectorNormalizationError: For a zero vector or a norm off by more than 1e-6

    Examples:
        >>> load_vectors("z.txt").tolist()
        [[0.0, 0.0, 1.0]]
    """
    rows = _read_tokens(path)
    if not rows:
        raise MatrixParseError(f"Vector file {path} is empty")
    body = rows
    if len(rows[0]) == 1 and len(rows) > 1 and all(len(fields) == 3 for fields in rows[1:]):
        try:
            count = int(rows[0][0])
        except ValueError as e:
            raise MatrixParseError(f"Malformed vector count in {path}: {e}") from e
        body = rows[1:]
        if len(body) != count:
            raise MatrixParseError(f"Header announces {count} vectors, found {len(body)}")
    try:
        values = [float(field) for fields in body for field in fields]
    except ValueError as e:
        raise MatrixParseError(f"Malformed number in {path}: {e}") from e
    if not values or len(values) % 3 != 0:
        raise MatrixParseError(f"Expected three coordinates per vector, got {len(values)} numbers")

    vectors = np.array(values, dtype=np.float64).reshape(-1, 3)
    if not np.all(np.isfinite(vectors)):
        raise MatrixParseError("Vector coordinates must be finite")
    norms = np.linalg.norm(vectors, axis=1)
    deviation = np.abs(norms - 1.0)
    worst = int(np.argmax(deviation))
    if norms[worst] == 0.0 or deviation[worst] > RENORMALIZE_TOLERANCE:
        raise VectorNormalizationError(f"Vector {worst + 1} has norm {norms[worst]}, expected 1 within {RENORMALIZE_TOLERANCE}")
    if deviation[worst] > SILENT_TOLERANCE:
        logger.warning(f"Renormalized vectors from {path}; largest norm deviation {deviation[worst]:.3e}")
    vectors = vectors / norms[:, None]
    logger.debug(f"Loaded {len(vectors)} vectors from {path}")
    return vectors


def save_vectors(vectors, path: PathLike) -> None:
    """Write vectors with an "n" header line; re-loadable by load_vectors."""
    array = np.asarray(vectors, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != 3:
        raise ValueError(f"Expected an n x 3 array, got shape {array.shape}")
    lines = [str(len(array))]
    lines.extend(" ".join(repr(float(value)) for value in row) for row in array)
    with open(Path(path), "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    logger.info(f"Wrote {len(array)} vectors to {path}")
