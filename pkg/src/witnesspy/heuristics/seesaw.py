"""
See-saw lower bounds for the one-bit, k-message and local bounds

Each see-saw fixes one side of a deterministic strategy, optimizes the other
side in closed form, and alternates until the objective stops changing. The
objective never decreases, so every reported value is attained by the
returned strategy and is a lower bound on the exact value.

Sign convention throughout: sgn(x) = +1 for x >= 0, -1 otherwise.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..core import RealMatrix, WitnessMatrix

logger = logging.getLogger(__name__)

MatrixLike = Union[WitnessMatrix, RealMatrix, np.ndarray]

MAX_ITERATIONS = 10_000
REAL_RELATIVE_TOLERANCE = 1e-12


def _entries(matrix: MatrixLike) -> Tuple[np.ndarray, bool]:
    if isinstance(matrix, (WitnessMatrix, RealMatrix)):
        entries = matrix.entries
    else:
        entries = np.asarray(matrix)
    if entries.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {entries.shape}")
    is_integer = np.issubdtype(entries.dtype, np.integer)
    if not is_integer:
        entries = entries.astype(np.float64)
    return entries, is_integer


def _sgn(values: np.ndarray) -> np.ndarray:
    return np.where(values >= 0, 1, -1).astype(np.int64)


def _same(value, previous, is_integer: bool) -> bool:
    if is_integer:
        return value == previous
    return abs(value - previous) <= REAL_RELATIVE_TOLERANCE * max(1.0, abs(value))


def _scalar(value, is_integer: bool):
    return int(value) if is_integer else float(value)


def _signs(values: Sequence[int], name: str) -> Tuple[int, ...]:
    result = tuple(int(v) for v in values)
    for position, v in enumerate(result):
        if v not in (-1, 1):
            raise ValueError(f"{name}[{position}] must be +1 or -1, got {v}")
    return result


@dataclass(frozen=True)
class OneBitStrategy:
    """
    Deterministic one-bit strategy.

    Alice sends bit a_x for preparation x; Bob answers b_plus[y] on a
    received +1 and b_minus[y] on a received -1.

    Examples:
        >>> s = OneBitStrategy(a=(1,), b_plus=(1,), b_minus=(-1,))
        >>> strategy_correlation(s).tolist()
        [[1.0]]
    """

    a: Tuple[int, ...]
    b_plus: Tuple[int, ...]
    b_minus: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _signs(self.a, "a"))
        object.__setattr__(self, "b_plus", _signs(self.b_plus, "b_plus"))
        object.__setattr__(self, "b_minus", _signs(self.b_minus, "b_minus"))
        if len(self.b_plus) != len(self.b_minus):
            raise ValueError(f"b_plus has {len(self.b_plus)} entries, b_minus has {len(self.b_minus)}")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def m(self) -> int:
        return len(self.b_plus)

    def correlation_array(self) -> np.ndarray:
        a = np.array(self.a, dtype=np.int64)
        return np.where(a[:, None] == 1, np.array(self.b_plus)[None, :], np.array(self.b_minus)[None, :]).astype(np.float64)

    def __str__(self) -> str:
        def row(values):
            return " ".join("+" if v > 0 else "-" for v in values)

        return f"a: {row(self.a)} | b+: {row(self.b_plus)} | b-: {row(self.b_minus)}"


@dataclass(frozen=True)
class SeesawReport:
    """
    Best see-saw run.

    Attributes:
        value: Objective at strategy (int for integer matrices)
        strategy: Strategy attaining value
        iterations: Iterations of the best restart
        restarts_used: Restarts performed
        trace: Objective after each iteration of the best restart
    """

    value: Union[int, float]
    strategy: OneBitStrategy
    iterations: int
    restarts_used: int
    trace: Tuple[Union[int, float], ...] = ()


def strategy_correlation(strategy: OneBitStrategy) -> RealMatrix:
    """
    Deterministic correlation matrix of a one-bit strategy.

    E_{x,y} = ((1 + a_x) b+_y + (1 - a_x) b-_y) / 2

    Examples:
        >>> s = OneBitStrategy(a=(-1,), b_plus=(1,), b_minus=(-1,))
        >>> strategy_correlation(s).tolist()
        [[-1.0]]
    """
    return RealMatrix(strategy.correlation_array())


def strategy_value(matrix: MatrixLike, strategy: OneBitStrategy) -> Union[int, float]:
    """Witness value sum_{x,y} M_{x,y} E_{x,y} of a deterministic strategy."""
    entries, is_integer = _entries(matrix)
    if entries.shape != (strategy.n, strategy.m):
        raise ValueError(f"Strategy is {strategy.n}x{strategy.m}, matrix is {entries.shape[0]}x{entries.shape[1]}")
    plus = np.array(strategy.a) == 1
    value = entries[plus].sum(axis=0) @ np.array(strategy.b_plus) + entries[~plus].sum(axis=0) @ np.array(strategy.b_minus)
    return _scalar(value, is_integer)


def _split_answers(entries: np.ndarray, a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    plus = a == 1
    return _sgn(entries[plus].sum(axis=0)), _sgn(entries[~plus].sum(axis=0))


def seesaw_l2(
    matrix: MatrixLike,
    restarts: int = 10,
    seed: int = 0,
    init_a: Optional[Sequence[int]] = None,
    max_iter: int = MAX_ITERATIONS,
) -> SeesawReport:
    """
    See-saw lower bound on L_2(M).

    Restart r draws Alice's bits from numpy's PCG64 generator seeded with
    seed + r (restart 0 uses init_a when given). Each iteration sets
    b+ = sgn of the column sums over rows with a_x = +1, b- likewise over
    rows with a_x = -1, then a_x = +1 iff M_x . b+ >= M_x . b-. A restart
    ends when two consecutive objective values are equal.

    Args:
        matrix: Integer or real n x m matrix
        restarts: Number of restarts, at least 1
        seed: Base seed
        init_a: Optional starting bits for restart 0
        max_iter: Iteration cap per restart

    Returns:
        SeesawReport of the best restart (ties keep the lowest restart index)

    Examples:
        >>> seesaw_l2(gen_family(2), restarts=10).value
        4
    """
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    entries, is_integer = _entries(matrix)
    n = entries.shape[0]

    best: Optional[SeesawReport] = None
    for restart in range(restarts):
        rng = np.random.default_rng(seed + restart)
        if restart == 0 and init_a is not None:
            a = np.array(_signs(init_a, "init_a"), dtype=np.int64)
            if len(a) != n:
                raise ValueError(f"init_a has {len(a)} entries, matrix has {n} rows")
        else:
            a = rng.integers(0, 2, size=n, dtype=np.int64) * 2 - 1

        trace = []
        previous = None
        for _ in range(max_iter):
            b_plus, b_minus = _split_answers(entries, a)
            plus_scores = entries @ b_plus
            minus_scores = entries @ b_minus
            a = np.where(plus_scores >= minus_scores, 1, -1).astype(np.int64)
            value = _scalar(np.maximum(plus_scores, minus_scores).sum(), is_integer)
            trace.append(value)
            if previous is not None and _same(value, previous, is_integer):
                break
            previous = value
        else:
            logger.warning(f"See-saw restart {restart} hit the iteration cap {max_iter}")

        report = SeesawReport(
            value=value,
            strategy=OneBitStrategy(a=tuple(a), b_plus=tuple(b_plus), b_minus=tuple(b_minus)),
            iterations=len(trace),
            restarts_used=restarts,
            trace=tuple(trace),
        )
        logger.debug(f"See-saw restart {restart}: {value} after {len(trace)} iterations")
        if best is None or report.value > best.value:
            best = report

    return best


def _canonical(groups: Sequence[int]) -> Tuple[int, ...]:
    relabel = {}
    for g in groups:
        relabel.setdefault(int(g), len(relabel) + 1)
    return tuple(relabel[int(g)] for g in groups)


def _group_value(entries: np.ndarray, groups: np.ndarray, k: int):
    sums = np.zeros((k, entries.shape[1]), dtype=entries.dtype)
    np.add.at(sums, groups, entries)
    return np.abs(sums).sum(), sums


def seesaw_lk(
    matrix: MatrixLike, k: int, restarts: int = 8, seed: int = 0, max_iter: int = MAX_ITERATIONS
) -> Tuple[Union[int, float], Tuple[int, ...]]:
    """
    See-saw lower bound on L_k(M).

    Alternates b_g = sgn(sum of rows in group g) with moving each row to the
    group maximising M_x . b_g (lowest group index on ties).

    Returns:
        (value, groups) with groups the canonical 1-based assignment attaining value

    Examples:
        >>> seesaw_lk(gen_family(2), 2)[0]
        4
    """
    if k < 1:
        raise ValueError(f"Group count must be positive, got {k}")
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    entries, is_integer = _entries(matrix)
    n = entries.shape[0]

    best_value = None
    best_groups: Tuple[int, ...] = ()
    for restart in range(restarts):
        rng = np.random.default_rng(seed + restart)
        groups = rng.integers(0, k, size=n)
        value, sums = _group_value(entries, groups, k)
        for _ in range(max_iter):
            scores = entries @ _sgn(sums).T
            groups = np.argmax(scores, axis=1)
            new_value, sums = _group_value(entries, groups, k)
            if _same(new_value, value, is_integer):
                break
            value = new_value
        if best_value is None or value > best_value:
            best_value, best_groups = value, _canonical(groups + 1)
    return _scalar(best_value, is_integer), best_groups


def seesaw_local(
    matrix: MatrixLike, restarts: int = 8, seed: int = 0, max_iter: int = MAX_ITERATIONS
) -> Tuple[Union[int, float], np.ndarray, np.ndarray]:
    """
    See-saw lower bound on the local bound L(M).

    Returns:
        (value, a, b) with value = sum M_{x,y} a_x b_y
    """
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    entries, is_integer = _entries(matrix)
    n = entries.shape[0]

    best = None
    for restart in range(restarts):
        rng = np.random.default_rng(seed + restart)
        a = rng.integers(0, 2, size=n, dtype=np.int64) * 2 - 1
        previous = None
        for _ in range(max_iter):
            b = _sgn(a @ entries)
            a = _sgn(entries @ b)
            value = _scalar(a @ entries @ b, is_integer)
            if previous is not None and _same(value, previous, is_integer):
                break
            previous = value
        if best is None or value > best[0]:
            best = (value, a.copy(), b.copy())
    return best


def strategy_from_assignment(matrix: MatrixLike, groups: Sequence[int]) -> OneBitStrategy:
    """
    Optimal one-bit strategy for a two-group row assignment.

    Rows in group 1 send +1 and rows in group 2 send -1; Bob answers the sign
    of each group's column sums.

    Examples:
        >>> strategy_from_assignment(gen_family(2), (1, 2)).b_minus
        (1, -1)
    """
    entries, _ = _entries(matrix)
    labels = np.array([int(g) for g in groups])
    if len(labels) != entries.shape[0]:
        raise ValueError(f"Assignment covers {len(labels)} rows, matrix has {entries.shape[0]}")
    if np.any((labels != 1) & (labels != 2)):
        raise ValueError("A one-bit strategy needs group indices in {1, 2}")
    a = np.where(labels == 1, 1, -1)
    b_plus, b_minus = _split_answers(entries, a)
    return OneBitStrategy(a=tuple(a), b_plus=tuple(b_plus), b_minus=tuple(b_minus))
