"""
witnesspy - Quantumness witnesses in the prepare-and-measure scenario

witnesspy computes exact classical one-bit bounds L_k(M) of integer witness
matrices, searches for witnesses separating qubit correlations from the
one-bit polytope, and certifies lower bounds on the constants K_PM and K_D.

Subpackages:
- core: witness matrices, file format and constructions
- norms: exact L_k by branch and bound plus brute-force oracles
- heuristics: see-saw lower bounds
- geometry: Bloch configurations, noisy families, q lower bounds, packings
- simulation: Gisin-Gisin one-bit Monte Carlo
- search: modified Gilbert algorithm
- certify: certificates, violation checks and eta bisection
- config / utils: run configuration, environment and serialization
"""

__version__ = "0.1.0"

from .core import MatrixIO, RealMatrix, WitnessMatrix, gen_family, integerize, load_matrix, make_doubled, sum_S
from .norms import (
    GroupAssignment,
    SolveResult,
    SolverConfig,
    cut_norm_bruteforce,
    lk_branch_bound,
    lk_bruteforce,
    lk_suffix_table,
    local_bound_bruteforce,
)
from .heuristics import OneBitStrategy, seesaw_l2, strategy_correlation
from .geometry import BlochConfig, correlation_matrix, noisy_family, q_lowerbound_alternate
from .simulation import gg_matrix, simulate_gg
from .search import GilbertConfig, run_gilbert
from .certify import Certificate, certify_witness, check_violation, eta_bisect

__all__ = [
    "WitnessMatrix",
    "RealMatrix",
    "MatrixIO",
    "load_matrix",
    "sum_S",
    "make_doubled",
    "gen_family",
    "integerize",
    "GroupAssignment",
    "SolveResult",
    "SolverConfig",
    "local_bound_bruteforce",
    "lk_bruteforce",
    "cut_norm_bruteforce",
    "lk_branch_bound",
    "lk_suffix_table",
    "OneBitStrategy",
    "seesaw_l2",
    "strategy_correlation",
    "BlochConfig",
    "correlation_matrix",
    "noisy_family",
    "q_lowerbound_alternate",
    "simulate_gg",
    "gg_matrix",
    "GilbertConfig",
    "run_gilbert",
    "Certificate",
    "certify_witness",
    "check_violation",
    "eta_bisect",
]
