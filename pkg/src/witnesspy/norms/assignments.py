"""
Row-to-group assignments and solver result/configuration types
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple
import os

import numpy as np

from ..core import WitnessMatrix


@dataclass(frozen=True)
class GroupAssignment:
    """
    Assignment of the n rows of a matrix to k groups (an element of W_{n,k}).

    Group indices are 1-based and canonical: first occurrences of the
    indices appear in increasing order 1, 2, 3, ...

    Examples:
        >>> matrix = WitnessMatrix.from_rows([[1, 1], [1, -1], [-1, 0]])
        >>> GroupAssignment(k=2, groups=(1, 2, 2)).evaluate(matrix)
        3
    """

    k: int
    groups: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"Group count must be positive, got {self.k}")
        groups = tuple(int(g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        next_new = 1
        for position, g in enumerate(groups):
            if g < 1 or g > self.k:
                raise ValueError(f"Group index {g} at row {position + 1} outside 1..{self.k}")
            if g > next_new:
                raise ValueError(f"Assignment {groups} is not canonical at row {position + 1}")
            if g == next_new:
                next_new += 1

    @staticmethod
    def canonical(groups: Sequence[int], k: int) -> "GroupAssignment":
        """
        Relabel any assignment into canonical form.

        Args:
            groups: Group index per row (any labels in 1..k)
            k: Group count

        Examples:
            >>> GroupAssignment.canonical([2, 2, 1], 2).groups
            (1, 1, 2)
        """
        relabel = {}
        result = []
        for g in groups:
            if g not in relabel:
                relabel[g] = len(relabel) + 1
            result.append(relabel[g])
        return GroupAssignment(k=k, groups=tuple(result))

    @property
    def n(self) -> int:
        return len(self.groups)

    def group_sums(self, matrix: WitnessMatrix) -> np.ndarray:
        """k x m array whose row g holds the sum of rows assigned to group g + 1."""
        if matrix.n != self.n:
            raise ValueError(f"Assignment covers {self.n} rows, matrix has {matrix.n}")
        sums = np.zeros((self.k, matrix.m), dtype=np.int64)
        for row, g in enumerate(self.groups):
            sums[g - 1] += matrix.entries[row]
        return sums

    def evaluate(self, matrix: WitnessMatrix) -> int:
        """Sum over groups of the Manhattan norm of the group row-sum."""
        return int(np.abs(self.group_sums(matrix)).sum())

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.groups)


@dataclass(frozen=True)
class SolveResult:
    """
    Outcome of an exact L_k computation.

    Attributes:
        value: L_k(M), or the user guess when the guess exceeded L_k(M)
        witness: Canonical assignment attaining value, absent when guess-dominated
        guess_dominated: True iff value equals the guess and no assignment attains it
        nodes: Search nodes visited (summed over workers)
    """

    value: int
    witness: Optional[GroupAssignment]
    guess_dominated: bool = False
    nodes: int = 0


def _default_threads() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SolverConfig:
    """
    Branch-and-bound tuning knobs.

    Attributes:
        threads: Worker processes for the parallel split
        parallel_depth: Prefix depth d at which the search is split into tasks
        skip_fraction: Suffixes with at least skip_fraction * n rows skip the pruning test
        guess: Guessed L_k(M) used as the initial incumbent
        warm_start: Seed the incumbent with a see-saw lower bound
        warm_restarts: See-saw restarts used for the warm start
    """

    threads: int = field(default_factory=_default_threads)
    parallel_depth: int = 3
    skip_fraction: float = 0.75
    guess: int = 0
    warm_start: bool = True
    warm_restarts: int = 8

    def __post_init__(self) -> None:
        if self.threads < 1:
            raise ValueError(f"threads must be positive, got {self.threads}")
        if self.parallel_depth < 0:
            raise ValueError(f"parallel_depth must be non-negative, got {self.parallel_depth}")
        if not 0.0 <= self.skip_fraction <= 1.0:
            raise ValueError(f"skip_fraction must lie in [0, 1], got {self.skip_fraction}")
        if self.guess < 0:
            raise ValueError(f"guess must be non-negative, got {self.guess}")
        if self.warm_restarts < 1:
            raise ValueError(f"warm_restarts must be positive, got {self.warm_restarts}")
