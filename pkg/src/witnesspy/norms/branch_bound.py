"""
Exact L_k(M) by branch and bound

The search walks canonical prefixes P of row-to-group assignments in row
order. With M = (A; B) split after the prefix, a branch is abandoned when

    ||P^T A||_M + L_k(B) <= c

where c is the best value known so far and L_k(B) comes from a memo table of
row-suffix values computed bottom-up (last row first). Group row-sums are
kept incrementally with their Manhattan norms cached, so extending a prefix
by one row costs O(k m). Suffixes with at least skip_fraction * n rows skip
the test (and their table entries are never computed).

For parallel runs the canonical prefixes of length parallel_depth become
independent tasks executed by a process pool; workers share a monotone
best-known value so that pruning in one worker benefits from leaves found
by the others.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple
import logging
import multiprocessing

import numpy as np
from typing_extensions import Protocol

from ..core import WitnessMatrix
from ..heuristics.seesaw import seesaw_lk
from .assignments import GroupAssignment, SolveResult, SolverConfig

logger = logging.getLogger(__name__)

# Suffixes shorter than this are searched in-process even when a pool exists.
POOL_MIN_ROWS = 12

Bounds = Tuple[Optional[int], ...]


class _SearchTask(NamedTuple):
    start: int
    prefix: Tuple[int, ...]
    bounds: Bounds
    floor: int


class Incumbent(Protocol):
    """Best-known value shared by a search; offers only ever raise it."""

    def get(self) -> int: ...

    def offer(self, value: int) -> None: ...


class _LocalIncumbent:
    """Best-known value for a single-process search."""

    def __init__(self, value: int):
        self.value = value

    def get(self) -> int:
        return self.value

    def offer(self, value: int) -> None:
        if value > self.value:
            self.value = value


class _SharedIncumbent:
    """Best-known value shared between worker processes; only ever increases."""

    def __init__(self, shared):
        self._shared = shared

    def get(self) -> int:
        # Unlocked read: a stale value only weakens pruning.
        return self._shared.get_obj().value

    def offer(self, value: int) -> None:
        with self._shared.get_lock():
            if value > self._shared.get_obj().value:
                self._shared.get_obj().value = value


class _PrefixSearch:
    """
    Depth-first search below one canonical prefix.

    Branches are cut when they cannot beat this search's own best value, or
    when they fall strictly below the shared incumbent. Ties with other
    searches therefore survive, and each search reports its first optimal
    leaf in depth-first order.
    """

    def __init__(self, rows: np.ndarray, k: int, bounds: Bounds, incumbent: Incumbent, floor: int):
        self.rows = rows
        self.k = k
        self.n = rows.shape[0]
        self.bounds = bounds
        self.incumbent = incumbent
        self.best = floor
        self.sums = np.zeros((k, rows.shape[1]), dtype=np.int64)
        self.norms = [0] * k
        self.assign = [0] * self.n
        self.start = 0
        self.nodes = 0
        self.best_value: Optional[int] = None
        self.best_assign: Optional[Tuple[int, ...]] = None

    def run(self, start: int, prefix: Sequence[int]) -> Tuple[Optional[int], Optional[Tuple[int, ...]], int]:
        self.start = start
        used = 0
        for offset, g in enumerate(prefix):
            row = start + offset
            self.sums[g] += self.rows[row]
            self.assign[row] = g
            used = max(used, g + 1)
        self.norms = [int(np.abs(self.sums[g]).sum()) for g in range(self.k)]
        self._descend(start + len(prefix), used, sum(self.norms))
        return self.best_value, self.best_assign, self.nodes

    def _record(self, value: int) -> None:
        if value > self.best:
            self.best = value
            self.incumbent.offer(value)
            self.best_value = value
            self.best_assign = tuple(self.assign[self.start:])

    def _descend(self, depth: int, used: int, total: int) -> None:
        self.nodes += 1
        if depth == self.n:
            self._record(total)
            return
        bound = self.bounds[depth]
        if bound is not None:
            reach = total + bound
            if reach <= self.best or reach < self.incumbent.get():
                return

        row = self.rows[depth]
        limit = used + 1 if used < self.k else self.k
        candidates = np.abs(self.sums[:limit] + row).sum(axis=1)
        norms = self.norms

        if depth == self.n - 1:
            best_group = 0
            best_total = total - norms[0] + int(candidates[0])
            for g in range(1, limit):
                value = total - norms[g] + int(candidates[g])
                if value > best_total:
                    best_group, best_total = g, value
            self.assign[depth] = best_group
            self._record(best_total)
            return

        for g in range(limit):
            new_norm = int(candidates[g])
            old_norm = norms[g]
            self.sums[g] += row
            norms[g] = new_norm
            self.assign[depth] = g
            self._descend(depth + 1, used if g < used else used + 1, total - old_norm + new_norm)
            self.sums[g] -= row
            norms[g] = old_norm


_WORKER: Dict[str, object] = {}


def _init_worker(rows: np.ndarray, k: int, shared) -> None:
    _WORKER["rows"] = rows
    _WORKER["k"] = k
    _WORKER["incumbent"] = _SharedIncumbent(shared)


def _run_task(task: _SearchTask) -> Tuple[Optional[int], Optional[Tuple[int, ...]], int]:
    search = _PrefixSearch(_WORKER["rows"], _WORKER["k"], task.bounds, _WORKER["incumbent"], task.floor)
    return search.run(task.start, task.prefix)


def canonical_prefixes(length: int, k: int) -> List[Tuple[int, ...]]:
    """
    All canonical 0-based group sequences of the given length, in depth-first order.

    Examples:
        >>> canonical_prefixes(3, 2)
        [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1)]
    """
    result: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...], used: int) -> None:
        if len(prefix) == length:
            result.append(prefix)
            return
        for g in range(min(used + 1, k)):
            extend(prefix + (g,), max(used, g + 1))

    extend((), 0)
    return result


class BranchBoundSolver:
    """
    Exact L_k(M) solver with memoized suffix bounds and an optional process pool.

    Examples:
        >>> solver = BranchBoundSolver(gen_family(2), k=2, config=SolverConfig(threads=1))
        >>> solver.solve().value
        4
    """

    def __init__(self, matrix: WitnessMatrix, k: int, config: Optional[SolverConfig] = None):
        if k < 1:
            raise ValueError(f"Group count must be positive, got {k}")
        self.matrix = matrix
        self.k = k
        self.config = config or SolverConfig()
        self.rows = np.ascontiguousarray(matrix.entries, dtype=np.int64)
        self.n = matrix.n
        self.row_norms = [int(value) for value in np.abs(self.rows).sum(axis=1)]
        self._executor: Optional[ProcessPoolExecutor] = None
        self._shared = None

    # Incumbent floors

    def _warm_value(self, start: int) -> int:
        if not self.config.warm_start:
            return 0
        value, _ = seesaw_lk(WitnessMatrix(self.rows[start:]), self.k, restarts=self.config.warm_restarts, seed=start)
        return int(value)

    def _lower_bound(self, start: int, bounds: List[Optional[int]]) -> int:
        lower = 0
        following = bounds[start + 1]
        if following is not None:
            # L_k(B) <= L_k(v; B) + ||v||_1
            lower = max(lower, following - self.row_norms[start])
        return max(lower, self._warm_value(start))

    # Search driver

    def _tasks(self, start: int, floor: int, bounds: List[Optional[int]]) -> List[_SearchTask]:
        remaining = self.n - start
        if self._executor is None or remaining < POOL_MIN_ROWS:
            depth = 0
        else:
            depth = min(self.config.parallel_depth, remaining)
        frozen = tuple(bounds)
        return [_SearchTask(start, prefix, frozen, floor) for prefix in canonical_prefixes(depth, self.k)]

    def _search(
        self, start: int, floor: int, bounds: List[Optional[int]]
    ) -> Tuple[Optional[int], Optional[Tuple[int, ...]], int]:
        tasks = self._tasks(start, floor, bounds)
        if len(tasks) == 1:
            search = _PrefixSearch(self.rows, self.k, tasks[0].bounds, _LocalIncumbent(floor), floor)
            return search.run(start, tasks[0].prefix)

        with self._shared.get_lock():
            self._shared.get_obj().value = floor
        outcomes = list(self._executor.map(_run_task, tasks))
        best_value: Optional[int] = None
        best_assign: Optional[Tuple[int, ...]] = None
        nodes = 0
        for value, assign, task_nodes in outcomes:
            nodes += task_nodes
            # Ties keep the lowest task index.
            if value is not None and (best_value is None or value > best_value):
                best_value, best_assign = value, assign
        return best_value, best_assign, nodes

    def _fill_bounds(self, bounds: List[Optional[int]], first: int) -> int:
        """Compute suffix values for starts n-1 down to first; returns visited nodes."""
        nodes = 0
        for start in range(self.n - 1, first - 1, -1):
            floor = self._lower_bound(start, bounds) - 1
            value, _, visited = self._search(start, floor, bounds)
            if value is None:
                raise RuntimeError(f"Suffix search from row {start} lost its lower bound")
            bounds[start] = value
            nodes += visited
            logger.debug(f"L_{self.k} of rows {start + 1}..{self.n} = {value}")
        return nodes

    def _first_tested_start(self) -> int:
        """Smallest suffix start whose row count is below skip_fraction * n."""
        threshold = self.config.skip_fraction * self.n
        for start in range(self.n + 1):
            if self.n - start < threshold:
                return start
        return self.n

    def _open_pool(self) -> None:
        if self.config.threads > 1 and self.n >= POOL_MIN_ROWS:
            context = multiprocessing.get_context()
            self._shared = context.Value("q", 0)
            self._executor = ProcessPoolExecutor(
                max_workers=self.config.threads,
                mp_context=context,
                initializer=_init_worker,
                initargs=(self.rows, self.k, self._shared),
            )
            logger.debug(f"Started {self.config.threads} workers (parallel depth {self.config.parallel_depth})")

    def _close_pool(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
        self._executor = None
        self._shared = None

    def solve(self) -> SolveResult:
        """
        Compute L_k(M) exactly.

        Returns:
            SolveResult with the value and a canonical witness. When the
            configured guess exceeds L_k(M), value equals the guess and
            guess_dominated is True.
        """
        bounds: List[Optional[int]] = [None] * (self.n + 1)
        bounds[self.n] = 0
        guess = self.config.guess
        self._open_pool()
        try:
            first = max(self._first_tested_start(), 1)
            nodes = self._fill_bounds(bounds, first)
            lower = self._lower_bound(0, bounds)
            floor = max(lower, guess) - 1
            value, assign, visited = self._search(0, floor, bounds)
            nodes += visited
        finally:
            self._close_pool()

        if value is None:
            logger.warning(f"Guess {guess} exceeds L_{self.k}(M); no assignment attains it")
            return SolveResult(value=guess, witness=None, guess_dominated=True, nodes=nodes)

        witness = GroupAssignment(k=self.k, groups=tuple(g + 1 for g in assign))
        logger.info(f"L_{self.k}(M) = {value} for {self.matrix!r} ({nodes} nodes)")
        return SolveResult(value=value, witness=witness, guess_dominated=False, nodes=nodes)

    def suffix_table(self) -> List[int]:
        """
        L_k of every row suffix, computed bottom-up with pruning at every level.

        Returns:
            List whose entry i is L_k of rows i..n (0-based i); entry 0 is L_k(M)
        """
        bounds: List[Optional[int]] = [None] * (self.n + 1)
        bounds[self.n] = 0
        self._open_pool()
        try:
            self._fill_bounds(bounds, 0)
        finally:
            self._close_pool()
        return [int(value) for value in bounds[: self.n]]

    def __repr__(self) -> str:
        return f"BranchBoundSolver(k={self.k}, matrix={self.matrix!r}, config={self.config!r})"


def lk_branch_bound(matrix: WitnessMatrix, k: int, config: Optional[SolverConfig] = None) -> SolveResult:
    """
    Exact L_k(M) by branch and bound.

    Args:
        matrix: Integer witness matrix
        k: Group count, k >= 1
        config: Solver configuration (threads, depth, skip fraction, guess)

    Returns:
        SolveResult

    Examples:
        >>> lk_branch_bound(gen_family(2), 2, SolverConfig(threads=1)).value
        4
    """
    return BranchBoundSolver(matrix, k, config).solve()


def lk_suffix_table(matrix: WitnessMatrix, k: int, config: Optional[SolverConfig] = None) -> List[int]:
    """
    L_k of each row suffix (v_i; ...; v_n), entry 0 being L_k(M).

    Examples:
        >>> lk_suffix_table(gen_family(2), 2, SolverConfig(threads=1))
        [4, 2]
    """
    return BranchBoundSolver(matrix, k, config).suffix_table()
