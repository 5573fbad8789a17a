"""
Line packings on the sphere

gen_packing spreads n lines {+-v_i} through the origin by gradient descent
on the projective repulsion energy sum_{i<j} 1 / (1 - (v_i . v_j)^2), a
local substitute for tabulated Grassmannian packings.
"""

from typing import Sequence
import logging
import math

import numpy as np

from .bloch import normalize_rows

logger = logging.getLogger(__name__)

# |cos| is clipped below 1 so coincident lines give a large finite energy
COS_LIMIT = 1.0 - 1e-12
GRADIENT_FLOOR = 1e-14


def _line_energy(vectors: np.ndarray) -> float:
    gram = vectors @ vectors.T
    upper = np.triu_indices(len(vectors), 1)
    cos = np.clip(gram[upper], -COS_LIMIT, COS_LIMIT)
    return float(np.sum(1.0 / (1.0 - cos * cos)))


def _line_gradient(vectors: np.ndarray) -> np.ndarray:
    gram = np.clip(vectors @ vectors.T, -COS_LIMIT, COS_LIMIT)
    np.fill_diagonal(gram, 0.0)
    weights = 2.0 * gram / (1.0 - gram * gram) ** 2
    gradient = weights @ vectors
    # project onto the tangent space of each sphere point
    gradient -= np.sum(gradient * vectors, axis=1, keepdims=True) * vectors
    return gradient


def gen_packing(n: int, seed: int = 0, iters: int = 2000) -> np.ndarray:
    """
    Generate n unit vectors whose lines are approximately maximally spread.

    Descent steps grow by 20% after an accepted step and halve until the
    energy decreases; the run is deterministic given seed.

    Args:
        n: Number of vectors, at least 1
        seed: Seed for the random starting configuration
        iters: Maximum number of accepted descent steps

    Returns:
        n x 3 array of unit vectors

    Examples:
        >>> gen_packing(1).tolist()
        [[0.0, 0.0, 1.0]]
    """
    if n < 1:
        raise ValueError(f"Packing size must be positive, got {n}")
    if n == 1:
        return np.array([[0.0, 0.0, 1.0]])

    rng = np.random.default_rng(seed)
    vectors = normalize_rows(rng.standard_normal((n, 3)))
    energy = _line_energy(vectors)
    step = 0.05

    for _ in range(iters):
        gradient = _line_gradient(vectors)
        if float(np.abs(gradient).max()) < GRADIENT_FLOOR:
            break
        while step > 1e-18:
            candidate = normalize_rows(vectors - step * gradient, fallback=vectors)
            candidate_energy = _line_energy(candidate)
            if candidate_energy < energy:
                vectors, energy = candidate, candidate_energy
                step *= 1.2
                break
            step *= 0.5
        else:
            break

    logger.debug(f"Packing of {n} lines: energy {energy:.12g}, min angle {math.degrees(min_line_angle(vectors)):.6f} deg")
    return vectors


def min_line_angle(vectors: Sequence[Sequence[float]]) -> float:
    """
    Minimum angle in radians between the lines {+-v_i}; pi/2 for a single vector.

    Examples:
        >>> round(min_line_angle([[1, 0, 0], [0, 1, 0]]), 6)
        1.570796
    """
    array = normalize_rows(np.array(vectors, dtype=np.float64))
    if len(array) < 2:
        return math.pi / 2
    gram = np.abs(array @ array.T)
    upper = np.triu_indices(len(array), 1)
    return float(np.arccos(min(1.0, float(gram[upper].max()))))
