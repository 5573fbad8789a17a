"""
Monte Carlo simulation of the Gisin-Gisin one-bit protocol

Per round, Alice and Bob share a direction lambda drawn uniformly from the
sphere. Alice sends c = sgn(a . lambda). Bob detects with probability
|b . lambda| and then outputs sgn(c b . lambda); otherwise he outputs 0.
Conditioned on detection the correlation is a . b; grouping 0 with +1 gives
(a . b + 1) / 2, and the detection rate is 1/2.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Tuple, Union
import logging
import math

import numpy as np

from ..core import RealMatrix, WitnessMatrix
from ..geometry import BlochConfig

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 1 << 18
UNIT_TOLERANCE = 1e-9

Seed = Union[int, np.random.SeedSequence]


@dataclass(frozen=True)
class ProtocolSample:
    """One protocol round: shared direction, Alice's message and Bob's raw outcome."""

    lam: Tuple[float, float, float]
    c: int
    b: int

    def __post_init__(self) -> None:
        if self.c not in (-1, 1):
            raise ValueError(f"Message must be +1 or -1, got {self.c}")
        if self.b not in (-1, 0, 1):
            raise ValueError(f"Outcome must be -1, 0 or +1, got {self.b}")

    @property
    def coarse(self) -> int:
        """Outcome with no-detection grouped with +1."""
        return 1 if self.b == 0 else self.b


@dataclass(frozen=True)
class SimReport:
    """
    Aggregated Monte Carlo estimates with their standard errors.

    Attributes:
        n_samples: Protocol rounds
        detect_rate: Fraction of rounds with b != 0
        e_detected: Mean of b over detected rounds (0 when nothing was detected)
        e_coarse: Mean of b after grouping b = 0 with +1
    """

    n_samples: int
    detect_rate: float
    e_detected: float
    e_coarse: float
    detect_rate_err: float
    e_detected_err: float
    e_coarse_err: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _unit(vector, name: str) -> np.ndarray:
    array = np.asarray(vector, dtype=np.float64).reshape(-1)
    if array.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {array.shape}")
    if abs(float(np.linalg.norm(array)) - 1.0) > UNIT_TOLERANCE:
        raise ValueError(f"{name} must be a unit vector, got norm {np.linalg.norm(array)}")
    return array


def _sphere_directions(rng: np.random.Generator, count: int) -> np.ndarray:
    draws = rng.standard_normal((count, 3))
    return draws / np.linalg.norm(draws, axis=1)[:, None]


def _bob_outcomes(a: np.ndarray, b: np.ndarray, lam: np.ndarray, uniforms: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    message = np.where(lam @ a >= 0, 1, -1)
    projection = lam @ b
    detected = uniforms < np.abs(projection)
    outcome = np.where(message * projection >= 0, 1, -1)
    return message, np.where(detected, outcome, 0)


def sample_protocol(a, b_vec, rng: np.random.Generator) -> ProtocolSample:
    """Draw a single protocol round."""
    a_arr, b_arr = _unit(a, "a"), _unit(b_vec, "b_vec")
    lam = _sphere_directions(rng, 1)
    message, outcome = _bob_outcomes(a_arr, b_arr, lam, rng.random(1))
    return ProtocolSample(lam=tuple(float(x) for x in lam[0]), c=int(message[0]), b=int(outcome[0]))


def _simulate_chunk(task: Tuple[np.ndarray, np.ndarray, int, np.random.SeedSequence]) -> Tuple[int, int, int]:
    a, b, count, seed_sequence = task
    rng = np.random.default_rng(seed_sequence)
    lam = _sphere_directions(rng, count)
    _, outcomes = _bob_outcomes(a, b, lam, rng.random(count))
    detected = int(np.count_nonzero(outcomes))
    coarse = np.where(outcomes == 0, 1, outcomes)
    return detected, int(outcomes.sum()), int(coarse.sum())


def simulate_gg(
    a,
    b_vec,
    n_samples: int,
    seed: Seed = 0,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> SimReport:
    """
    Simulate the one-bit protocol for one preparation/measurement pair.

    Samples are drawn in chunks, each with its own generator spawned from
    the master seed, so the report only depends on seed and chunk_size.

    Args:
        a: Alice's unit vector
        b_vec: Bob's unit vector
        n_samples: Protocol rounds, at least 1
        seed: Master seed (int or numpy SeedSequence)
        chunk_size: Rounds per chunk
        workers: Worker processes; 1 runs in-process

    Returns:
        SimReport with estimates and standard errors

    Examples:
        >>> report = simulate_gg([0, 0, 1], [0, 0, 1], 100000, seed=1)
        >>> abs(report.e_coarse - 1.0) < 0.01
        True
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be at least 1, got {n_samples}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be at least 1, got {chunk_size}")
    a_arr, b_arr = _unit(a, "a"), _unit(b_vec, "b_vec")

    counts = [chunk_size] * (n_samples // chunk_size)
    if n_samples % chunk_size:
        counts.append(n_samples % chunk_size)
    master = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    tasks = [(a_arr, b_arr, count, child) for count, child in zip(counts, master.spawn(len(counts)))]

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            partials: List[Tuple[int, int, int]] = list(executor.map(_simulate_chunk, tasks))
    else:
        partials = [_simulate_chunk(task) for task in tasks]

    detected = sum(p[0] for p in partials)
    detected_sum = sum(p[1] for p in partials)
    coarse_sum = sum(p[2] for p in partials)

    detect_rate = detected / n_samples
    e_detected = detected_sum / detected if detected else 0.0
    e_coarse = coarse_sum / n_samples
    report = SimReport(
        n_samples=n_samples,
        detect_rate=detect_rate,
        e_detected=e_detected,
        e_coarse=e_coarse,
        detect_rate_err=math.sqrt(detect_rate * (1.0 - detect_rate) / n_samples),
        e_detected_err=math.sqrt(max(0.0, 1.0 - e_detected ** 2) / detected) if detected else float("inf"),
        e_coarse_err=math.sqrt(max(0.0, 1.0 - e_coarse ** 2) / n_samples),
    )
    logger.debug(f"Gisin-Gisin {n_samples} rounds in {len(tasks)} chunks: {report}")
    return report


def gg_matrix(cfg: BlochConfig, n_samples: int, seed: Seed = 0, workers: int = 1) -> RealMatrix:
    """
    Coarse-grained correlation estimates for every (a_x, b_y) pair.

    Pair (x, y) uses the child seed x * m + y spawned from the master seed.
    """
    master = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = master.spawn(cfg.n * cfg.m)
    grid = np.empty((cfg.n, cfg.m))
    for x in range(cfg.n):
        for y in range(cfg.m):
            report = simulate_gg(cfg.a_vectors[x], cfg.b_vectors[y], n_samples, seed=children[x * cfg.m + y], workers=workers)
            grid[x, y] = report.e_coarse
    logger.info(f"Simulated {cfg.n}x{cfg.m} pairs with {n_samples} rounds each")
    return RealMatrix(grid)


def one_bit_bound_holds(matrix: WitnessMatrix, estimates: RealMatrix, l2: int, n_samples: int) -> bool:
    """
    Check sum M . E_hat <= L_2(M) + 3 ||M||_1 / sqrt(n_samples).

    A simulated one-bit model can never exceed the one-bit bound beyond
    statistical slack.
    """
    if matrix.shape != estimates.shape:
        raise ValueError(f"Matrix is {matrix.n}x{matrix.m}, estimates are {estimates.n}x{estimates.m}")
    value = float(np.sum(matrix.entries * estimates.entries))
    slack = 3.0 * matrix.manhattan() / math.sqrt(n_samples)
    holds = value <= l2 + slack
    if not holds:
        logger.warning(f"Simulated value {value:.6f} exceeds L2 = {l2} plus slack {slack:.6f}")
    return holds
