"""
Modified Gilbert algorithm for one-bit witnesses

Given a target correlation matrix E(eta), the loop keeps an iterate E^(i)
inside the one-bit polytope (the convex hull of deterministic strategy
correlations) and moves it toward the target:

1. the oracle returns the deterministic strategy P maximizing the overlap
   <E(eta) - E^(i), P>;
2. E^(i+1) is the point of the convex hull of E^(i) and the last buffered
   vertices that is closest to E(eta) in Frobenius distance.

When the distance stays positive, the residual M = E(eta) - E^(i) is a
candidate witness separating E(eta) from the polytope.
"""

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Deque, Dict, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np
from scipy.optimize import nnls

from ..core import RealMatrix
from ..heuristics.seesaw import OneBitStrategy, seesaw_l2
from ..utils.serialization_utils import SerializationUtils

logger = logging.getLogger(__name__)

# weight of the sum-to-one row in the augmented least-squares system
SIMPLEX_PENALTY = 1e3
WEIGHT_FLOOR = 1e-15


@dataclass(frozen=True)
class GilbertConfig:
    """
    Gilbert run parameters.

    Attributes:
        epsilon: Stop when the distance to the target drops to epsilon
        i_max: Iteration cap
        buffer_size: Recent oracle vertices kept for the projection
        oracle_restarts: See-saw restarts per oracle call
        seed: Base seed of the oracle
        log_every: Log progress every this many iterations
    """

    epsilon: float = 1e-6
    i_max: int = 200_000
    buffer_size: int = 40
    oracle_restarts: int = 20
    seed: int = 0
    log_every: int = 1000

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.i_max < 0:
            raise ValueError(f"i_max must be non-negative, got {self.i_max}")
        if self.buffer_size < 1:
            raise ValueError(f"buffer_size must be positive, got {self.buffer_size}")
        if self.oracle_restarts < 1:
            raise ValueError(f"oracle_restarts must be positive, got {self.oracle_restarts}")
        if self.log_every < 1:
            raise ValueError(f"log_every must be positive, got {self.log_every}")


BufferEntry = Tuple[Optional[OneBitStrategy], np.ndarray]


@dataclass
class GilbertState:
    """
    Mutable state of one Gilbert run.

    Attributes:
        iterate: Current polytope point E^(i)
        buffer: Most recent oracle vertices with their strategies
        weights: Convex weights of the vertices making up iterate, or None
            once a vertex without a known strategy entered the hull
        dist_history: Distance to the target after each iteration
        i: Iteration counter
    """

    iterate: RealMatrix
    buffer: Deque[BufferEntry]
    weights: Optional[Dict[OneBitStrategy, float]] = None
    dist_history: List[float] = field(default_factory=list)
    i: int = 0

    @classmethod
    def initial(cls, n: int, m: int, buffer_size: int = 40) -> "GilbertState":
        """
        Start at E^(0) = 0, the even mixture of the all-(+1) and all-(-1) strategies.
        """
        plus = OneBitStrategy(a=(1,) * n, b_plus=(1,) * m, b_minus=(1,) * m)
        minus = OneBitStrategy(a=(1,) * n, b_plus=(-1,) * m, b_minus=(-1,) * m)
        return cls(
            iterate=RealMatrix(np.zeros((n, m))),
            buffer=deque(maxlen=buffer_size),
            weights={plus: 0.5, minus: 0.5},
        )

    def reconstruct(self) -> np.ndarray:
        """Recombine the tracked vertex weights into a matrix."""
        if self.weights is None:
            raise ValueError("Vertex weights are not tracked for this state")
        return _mixture(self.weights, self.iterate.shape)

    @property
    def distance(self) -> Optional[float]:
        return self.dist_history[-1] if self.dist_history else None


def _mixture(weights: Dict[OneBitStrategy, float], shape: Tuple[int, int]) -> np.ndarray:
    total = np.zeros(shape)
    for strategy, weight in weights.items():
        total += weight * strategy.correlation_array()
    return total


def _distance(target: np.ndarray, point: np.ndarray) -> float:
    return float(np.linalg.norm(target - point))


def _hull_projection(points: Sequence[np.ndarray], target: np.ndarray) -> np.ndarray:
    """Convex weights of points whose combination is closest to target."""
    columns = np.stack([p.reshape(-1) for p in points], axis=1)
    penalty = SIMPLEX_PENALTY * max(1.0, float(np.abs(columns).max()))
    system = np.vstack([columns, penalty * np.ones((1, len(points)))])
    rhs = np.concatenate([target.reshape(-1), [penalty]])
    coefficients, _ = nnls(system, rhs)
    total = coefficients.sum()
    if total <= 0:
        coefficients = np.zeros(len(points))
        coefficients[0] = 1.0
        return coefficients
    return coefficients / total


def gilbert_project(
    state: GilbertState,
    target: RealMatrix,
    new_point: RealMatrix,
    strategy: Optional[OneBitStrategy] = None,
) -> GilbertState:
    """
    Move the iterate to the closest point of the buffered hull.

    The new point joins the buffer. Candidates are the plain segment step
    between E^(i) and the new point and the non-negative least-squares
    projection onto the hull of E^(i) and the buffer; the closer one wins,
    and the iterate never moves away from the target.

    Args:
        state: Current state (left unmodified)
        target: Target matrix E(eta)
        new_point: Deterministic correlation matrix from the oracle
        strategy: Strategy of new_point; needed to keep tracking weights

    Returns:
        Next state (the same object when new_point equals the iterate)
    """
    current = state.iterate.entries
    goal = target.entries
    point = new_point.entries
    if point.shape != current.shape or goal.shape != current.shape:
        raise ValueError(f"Shapes disagree: iterate {current.shape}, target {goal.shape}, point {point.shape}")
    if np.array_equal(point, current):
        return state

    buffer: Deque[BufferEntry] = deque(state.buffer, maxlen=state.buffer.maxlen)
    buffer.append((strategy, np.array(point)))
    current_dist = _distance(goal, current)

    # segment step
    direction = point - current
    t = float(np.clip(np.sum((goal - current) * direction) / np.sum(direction * direction), 0.0, 1.0))
    segment = current + t * direction
    segment_dist = _distance(goal, segment)

    points = [current] + [entry[1] for entry in buffer]
    coefficients = _hull_projection(points, goal)
    hull = sum(c * p for c, p in zip(coefficients, points))
    hull_dist = _distance(goal, hull)

    if hull_dist <= segment_dist:
        candidate, candidate_dist = hull, hull_dist
        mixture = list(zip(coefficients[1:], (entry[0] for entry in buffer)))
        keep = float(coefficients[0])
    else:
        candidate, candidate_dist = segment, segment_dist
        mixture = [(t, strategy)]
        keep = 1.0 - t

    if candidate_dist > current_dist:
        candidate, candidate_dist, mixture, keep = current, current_dist, [], 1.0

    weights = None
    if state.weights is not None and all(s is not None for c, s in mixture if c > WEIGHT_FLOOR):
        weights = {s: w * keep for s, w in state.weights.items()}
        for c, s in mixture:
            if c > WEIGHT_FLOOR:
                weights[s] = weights.get(s, 0.0) + float(c)
        weights = {s: w for s, w in weights.items() if w > WEIGHT_FLOOR}
        total = sum(weights.values())
        weights = {s: w / total for s, w in weights.items()}
        # tracked iterates are the weighted mixture itself
        mixed = _mixture(weights, current.shape)
        mixed_dist = _distance(goal, mixed)
        if mixed_dist <= current_dist:
            candidate, candidate_dist = mixed, mixed_dist
        else:
            candidate, candidate_dist, weights = current, current_dist, state.weights

    return GilbertState(
        iterate=RealMatrix(candidate),
        buffer=buffer,
        weights=weights,
        dist_history=state.dist_history + [candidate_dist],
        i=state.i + 1,
    )


def gilbert_oracle(
    residual: RealMatrix,
    cfg: Optional[GilbertConfig] = None,
    init_a: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> OneBitStrategy:
    """
    Deterministic strategy heuristically maximizing sum residual_{x,y} E^det_{x,y}.

    The maximum over deterministic strategies equals L_2(residual), so the
    one-bit see-saw serves as the oracle.

    Examples:
        >>> strategy = gilbert_oracle(gen_family(2).as_real())
        >>> strategy_value(gen_family(2), strategy)
        4
    """
    cfg = cfg or GilbertConfig()
    report = seesaw_l2(residual, restarts=cfg.oracle_restarts, seed=cfg.seed if seed is None else seed, init_a=init_a)
    return report.strategy


def run_gilbert(target: RealMatrix, cfg: Optional[GilbertConfig] = None) -> Tuple[RealMatrix, float, GilbertState]:
    """
    Run the modified Gilbert algorithm toward a target correlation matrix.

    Stops when the distance drops to epsilon, after i_max iterations, or when
    the oracle vertex offers no ascent direction <residual, P - E^(i)> <= 0.

    Args:
        target: E(eta), typically noisy_family(correlation_matrix(cfg), eta)
        cfg: Run parameters

    Returns:
        (residual M = E(eta) - E^(i), final distance, final state)
    """
    cfg = cfg or GilbertConfig()
    goal = target.entries
    state = GilbertState.initial(target.n, target.m, cfg.buffer_size)
    dist = _distance(goal, state.iterate.entries)
    state.dist_history.append(dist)
    logger.info(f"Gilbert start: {target.n}x{target.m} target, dist(0) = {dist:.10g}, config {cfg}")

    previous_a: Optional[Tuple[int, ...]] = None
    for iteration in range(1, cfg.i_max + 1):
        if dist <= cfg.epsilon:
            break
        residual = goal - state.iterate.entries
        strategy = gilbert_oracle(
            RealMatrix(residual), cfg, init_a=previous_a, seed=cfg.seed + iteration * cfg.oracle_restarts
        )
        vertex = strategy.correlation_array()
        gap = float(np.sum(residual * (vertex - state.iterate.entries)))
        if gap <= 0.0:
            logger.warning(f"Oracle found no ascent direction at iteration {iteration}; stopping with dist {dist:.10g}")
            break
        state = gilbert_project(state, target, RealMatrix(vertex), strategy)
        dist = state.dist_history[-1]
        previous_a = strategy.a
        if iteration % cfg.log_every == 0:
            logger.info(f"Gilbert iteration {iteration}: dist = {dist:.10g}, gap = {gap:.6g}")

    residual = RealMatrix(goal - state.iterate.entries)
    logger.info(f"Gilbert finished after {state.i} projections: dist = {dist:.10g}")
    return residual, dist, state


def write_dist_history(state: GilbertState, path: Union[str, Path]) -> int:
    """Write the distance history as CSV with columns iteration,dist."""
    return SerializationUtils.write_csv(["iteration", "dist"], enumerate(state.dist_history), path)
