"""
Bloch-vector configurations and rank-1 correlations

A qubit strategy with pure states and projective measurements is described by
unit vectors a_x (preparations) and b_y (measurements) in R^3 whose
correlations are E_{x,y} = a_x . b_y. The witness value
q(M) = max sum M_{x,y} a_x . b_y is bounded from below here by alternating
conditional maximization.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union
import logging

import numpy as np

from ..core import RealMatrix, WitnessMatrix
from ..errors import VectorNormalizationError

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9


def _unit_rows(vectors, name: str) -> np.ndarray:
    array = np.array(vectors, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != 3 or array.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty list of 3-vectors, got shape {array.shape}")
    deviation = np.abs(np.linalg.norm(array, axis=1) - 1.0)
    worst = int(np.argmax(deviation))
    if deviation[worst] > NORM_TOLERANCE:
        raise VectorNormalizationError(f"{name}[{worst}] has norm {np.linalg.norm(array[worst])}, expected 1")
    array.setflags(write=False)
    return array


def normalize_rows(vectors: np.ndarray, fallback: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Scale every row to unit length.

    Rows with zero length are replaced by the matching fallback row, or raise
    when no fallback is given.
    """
    norms = np.linalg.norm(vectors, axis=1)
    zero = norms == 0.0
    if np.any(zero) and fallback is None:
        raise VectorNormalizationError(f"Row {int(np.argmax(zero))} is the zero vector")
    result = vectors / np.where(zero, 1.0, norms)[:, None]
    if np.any(zero):
        result[zero] = fallback[zero]
    return result


@dataclass(frozen=True, eq=False)
class BlochConfig:
    """
    Unit vectors a_x (n of them) and b_y (m of them) on the sphere.

    Examples:
        >>> cfg = BlochConfig(a_vectors=[[0, 0, 1]], b_vectors=[[0, 0, -1]])
        >>> correlation_matrix(cfg).tolist()
        [[-1.0]]
    """

    a_vectors: np.ndarray
    b_vectors: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_vectors", _unit_rows(self.a_vectors, "a_vectors"))
        object.__setattr__(self, "b_vectors", _unit_rows(self.b_vectors, "b_vectors"))

    @classmethod
    def shared(cls, vectors) -> "BlochConfig":
        """Configuration with a_i = b_i = v_i."""
        return cls(a_vectors=vectors, b_vectors=vectors)

    @property
    def n(self) -> int:
        return int(self.a_vectors.shape[0])

    @property
    def m(self) -> int:
        return int(self.b_vectors.shape[0])

    def __repr__(self) -> str:
        return f"BlochConfig(n={self.n}, m={self.m})"


def correlation_matrix(cfg: BlochConfig) -> RealMatrix:
    """
    E_{x,y} = a_x . b_y, clipped to [-1, 1] against rounding.

    Examples:
        >>> cfg = BlochConfig(a_vectors=[[1, 0, 0]], b_vectors=[[0, 0, 1]])
        >>> correlation_matrix(cfg).tolist()
        [[0.0]]
    """
    return RealMatrix(np.clip(cfg.a_vectors @ cfg.b_vectors.T, -1.0, 1.0))


@dataclass(frozen=True)
class EtaFamily:
    """
    Noisy correlations E(eta) = eta E + (1 - eta) for eta in [1/2, 1].

    Non-detection events are assigned the outcome +1, so eta is the
    detection efficiency.
    """

    base: RealMatrix
    eta: float

    def __post_init__(self) -> None:
        if not 0.5 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [1/2, 1], got {self.eta}")

    def matrix(self) -> RealMatrix:
        return noisy_family(self.base, self.eta)


def noisy_family(matrix: RealMatrix, eta: float) -> RealMatrix:
    """
    Entry-wise E_{x,y}(eta) = eta E_{x,y} + (1 - eta).

    Args:
        matrix: Correlation matrix
        eta: Detection efficiency in [0, 1]; values below 1/2 are accepted with a warning

    Raises:
        ValueError: If eta is outside [0, 1]

    Examples:
        >>> noisy_family(RealMatrix.from_rows([[0.0, 1.0]]), 0.5).tolist()
        [[0.5, 1.0]]
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    if eta < 0.5:
        logger.warning(f"eta = {eta} is below 1/2, where the one-bit Gisin-Gisin model already reproduces E(eta)")
    return RealMatrix(eta * matrix.entries + (1.0 - eta))


def visibility_family(matrix: RealMatrix, p: float) -> RealMatrix:
    """
    White-noise family p E: visibility p, or random outcomes on non-detection.

    Raises:
        ValueError: If p is outside [0, 1]
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Visibility must lie in [0, 1], got {p}")
    return RealMatrix(p * matrix.entries)


def _entries(matrix: Union[WitnessMatrix, RealMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(matrix, (WitnessMatrix, RealMatrix)):
        return matrix.entries.astype(np.float64)
    return np.asarray(matrix, dtype=np.float64)


def q_value(matrix: Union[WitnessMatrix, RealMatrix], cfg: BlochConfig) -> float:
    """Witness value sum M_{x,y} a_x . b_y at a fixed configuration."""
    entries = _entries(matrix)
    if entries.shape != (cfg.n, cfg.m):
        raise ValueError(f"Configuration is {cfg.n}x{cfg.m}, matrix is {entries.shape[0]}x{entries.shape[1]}")
    return float(np.sum(entries * (cfg.a_vectors @ cfg.b_vectors.T)))


def _random_unit(rng: np.random.Generator, count: int) -> np.ndarray:
    while True:
        draw = rng.standard_normal((count, 3))
        norms = np.linalg.norm(draw, axis=1)
        if np.all(norms > 0):
            return draw / norms[:, None]


def _alternate(entries: np.ndarray, a: np.ndarray, b: np.ndarray, max_iter: int, tol: float) -> Tuple[float, np.ndarray, np.ndarray, int]:
    value = float(np.sum((entries @ b) * a))
    for iteration in range(1, max_iter + 1):
        new_b = normalize_rows(entries.T @ a, fallback=b)
        new_a = normalize_rows(entries @ new_b, fallback=a)
        new_value = float(np.sum((entries @ new_b) * new_a))
        if new_value < value:
            # rounding noise only; keep the better point
            return value, a, b, iteration
        improvement = new_value - value
        a, b, value = new_a, new_b, new_value
        if improvement < tol:
            return value, a, b, iteration
    logger.debug(f"q alternation stopped at max_iter = {max_iter}")
    return value, a, b, max_iter


def q_lowerbound_alternate(
    matrix: Union[WitnessMatrix, RealMatrix],
    init: Union[BlochConfig, int, None] = None,
    max_iter: int = 10_000,
    tol: float = 1e-10,
    restarts: int = 1,
) -> Tuple[float, BlochConfig]:
    """
    Achievable lower bound on q(M) by alternating maximization.

    With a fixed, b_y = normalize(sum_x M_{x,y} a_x) maximizes the objective;
    symmetrically for a_x. A zero resultant keeps the previous vector. The
    iterate sequence is non-decreasing and stops when the improvement drops
    below tol.

    Args:
        matrix: n x m witness matrix
        init: Starting configuration, or a seed for random starts (default seed 0)
        max_iter: Iteration cap per run
        tol: Absolute improvement threshold
        restarts: Random starts with seeds seed, seed + 1, ...; with a
            configuration as init, extra restarts are random with seeds 1, 2, ...

    Returns:
        (value, cfg) where value = sum M_{x,y} a_x . b_y at cfg

    Examples:
        >>> value, _ = q_lowerbound_alternate(gen_family(2), init=0, restarts=5)
        >>> round(value, 6)
        2.828427
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    entries = _entries(matrix)
    n, m = entries.shape

    starts = []
    if isinstance(init, BlochConfig):
        if (init.n, init.m) != (n, m):
            raise ValueError(f"Initial configuration is {init.n}x{init.m}, matrix is {n}x{m}")
        starts.append((np.array(init.a_vectors), np.array(init.b_vectors)))
        seeds = range(1, restarts)
    else:
        base = 0 if init is None else int(init)
        seeds = range(base, base + restarts)
    for seed in seeds:
        rng = np.random.default_rng(seed)
        starts.append((_random_unit(rng, n), _random_unit(rng, m)))

    best = None
    for index, (a, b) in enumerate(starts):
        value, a, b, iterations = _alternate(entries, a, b, max_iter, tol)
        logger.debug(f"q alternation start {index}: {value:.10g} after {iterations} iterations")
        if best is None or value > best[0]:
            best = (value, a, b)

    value, a, b = best
    return value, BlochConfig(a_vectors=a, b_vectors=b)
