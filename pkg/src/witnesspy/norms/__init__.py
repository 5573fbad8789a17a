"""
Exact classical bounds

This package provides:
- lk_branch_bound / lk_suffix_table: exact L_k(M) by branch and bound
- Brute-force oracles for L(M), L_k(M) and the cut norm
- GroupAssignment, SolveResult and SolverConfig types
"""

from .assignments import GroupAssignment, SolveResult, SolverConfig
from .bruteforce import cut_norm_bruteforce, lk_bruteforce, local_bound_bruteforce, local_bound_witness
from .branch_bound import BranchBoundSolver, canonical_prefixes, lk_branch_bound, lk_suffix_table

__all__ = [
    "GroupAssignment",
    "SolveResult",
    "SolverConfig",
    "local_bound_bruteforce",
    "local_bound_witness",
    "lk_bruteforce",
    "cut_norm_bruteforce",
    "BranchBoundSolver",
    "canonical_prefixes",
    "lk_branch_bound",
    "lk_suffix_table",
]
