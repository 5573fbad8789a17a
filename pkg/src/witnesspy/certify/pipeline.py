"""
Certification pipeline

certify_witness chains the exact one-bit bound, the entry sum and the
alternating q lower bound into a Certificate; check_violation and
eta_bisect evaluate the noisy witness inequality with certified margins.
"""

from dataclasses import dataclass
from typing import Optional
import logging

import numpy as np

from ..core import RealMatrix, WitnessMatrix
from ..errors import GuessDominatedError, NoViolationError
from ..geometry import BlochConfig, q_lowerbound_alternate, q_value
from ..heuristics import seesaw_local
from ..norms import SolverConfig, lk_branch_bound, local_bound_witness
from .certificate import Certificate, certified_sum, norm_deviation

logger = logging.getLogger(__name__)

# Largest smaller side for which the exact local witness seeds the alternation
LOCAL_SEED_SIDE = 20
Z_AXIS = np.array([0.0, 0.0, 1.0])


def _local_seed(matrix: WitnessMatrix, seed: int, restarts: int) -> BlochConfig:
    """Embed a (near-)optimal +-1 local strategy as vectors +-(0, 0, 1)."""
    if min(matrix.n, matrix.m) <= LOCAL_SEED_SIDE:
        _, a, b = local_bound_witness(matrix)
    else:
        _, a, b = seesaw_local(matrix, restarts=restarts, seed=seed)
    return BlochConfig(a_vectors=np.outer(a, Z_AXIS), b_vectors=np.outer(b, Z_AXIS))


def certify_witness(
    matrix: WitnessMatrix,
    cfg_vectors: Optional[BlochConfig] = None,
    solver_cfg: Optional[SolverConfig] = None,
    seed: int = 0,
    restarts: int = 10,
    alternate: bool = True,
) -> Certificate:
    """
    Certify K_PM and K_D lower bounds for a witness matrix.

    Args:
        matrix: Integer witness matrix
        cfg_vectors: Bloch configuration to evaluate and seed the alternation;
            without one, the alternation starts from the local-bound witness
            embedded as +-(0, 0, 1) plus random restarts
        solver_cfg: Exact solver configuration
        seed: Seed for the random restarts
        restarts: Random restarts of the alternation
        alternate: With cfg_vectors, also run the alternation from it and keep the better value

    Returns:
        Certificate

    Raises:
        GuessDominatedError: If the solver guess exceeds L_2(M)
        DegenerateRatioError: For the zero matrix

    Examples:
        >>> cert = certify_witness(make_doubled(gen_family(2)))
        >>> round(cert.ratio_kd, 6)
        1.414214
    """
    result = lk_branch_bound(matrix, 2, solver_cfg)
    if result.guess_dominated:
        raise GuessDominatedError(f"Guess {result.value} exceeds L_2(M); no exact certificate")
    l2 = result.value

    candidates = []
    if cfg_vectors is not None:
        candidates.append((q_value(matrix, cfg_vectors), cfg_vectors))
        if alternate:
            candidates.append(q_lowerbound_alternate(matrix, init=cfg_vectors))
    else:
        candidates.append(q_lowerbound_alternate(matrix, init=_local_seed(matrix, seed, restarts)))
        candidates.append(q_lowerbound_alternate(matrix, init=seed, restarts=restarts))

    # first maximum wins, so a supplied configuration is kept on ties
    best_cfg = candidates[0][1]
    best_value = candidates[0][0]
    for value, cfg in candidates[1:]:
        if value > best_value:
            best_value, best_cfg = value, cfg

    correlations = best_cfg.a_vectors @ best_cfg.b_vectors.T
    q_lb, q_error = certified_sum(
        matrix, correlations, norm_deviation(best_cfg.a_vectors), norm_deviation(best_cfg.b_vectors)
    )
    cert = Certificate.build(matrix, l2, q_lb, q_error, config=best_cfg)
    logger.info(f"{cert!r}: ratio_kpm = {cert.ratio_kpm:.12g}, ratio_kd = {cert.ratio_kd}")
    return cert


@dataclass(frozen=True)
class ViolationReport:
    """
    Outcome of a noisy witness evaluation; truthy iff the violation is certified.

    Attributes:
        value: sum M_{x,y} E_{x,y}(eta)
        l2: Exact one-bit bound
        margin: value - l2
        error_bound: Certified error of value
        violated: margin > error_bound
    """

    value: float
    l2: int
    margin: float
    error_bound: float
    violated: bool

    def __bool__(self) -> bool:
        return self.violated


def check_violation(matrix: WitnessMatrix, e_eta: RealMatrix, l2_exact: int) -> ViolationReport:
    """
    Test sum M_{x,y} E_{x,y}(eta) > L_2(M) beyond the certified summation error.

    Examples:
        >>> bool(check_violation(chsh, deterministic_optimum, 4))
        False
    """
    value, error = certified_sum(matrix, e_eta.entries)
    margin = value - l2_exact
    report = ViolationReport(value=value, l2=int(l2_exact), margin=margin, error_bound=error, violated=margin > error)
    logger.debug(f"Violation check: {report}")
    return report


def eta_bisect(
    matrix: WitnessMatrix,
    cfg_vectors: Optional[BlochConfig] = None,
    tol: float = 1e-9,
    certificate: Optional[Certificate] = None,
    solver_cfg: Optional[SolverConfig] = None,
    seed: int = 0,
) -> float:
    """
    Smallest detection efficiency eta (within tol) violating the one-bit bound.

    Bisects on eta q_lb + (1 - eta) S > L_2 at the certified configuration;
    the result matches (L_2 - S) / (q_lb - S) within tol.

    Raises:
        NoViolationError: If ratio_kd <= 1, so no eta in [0, 1] violates
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    cert = certificate or certify_witness(matrix, cfg_vectors, solver_cfg=solver_cfg, seed=seed)
    if cert.ratio_kd is None or cert.ratio_kd <= 1.0 or not cert.eta_violated(1.0):
        raise NoViolationError(f"No eta in [0, 1] violates the bound (ratio_kd = {cert.ratio_kd})")

    low, high = 0.0, 1.0
    if cert.eta_violated(low):
        return low
    while high - low > tol:
        middle = 0.5 * (low + high)
        if cert.eta_violated(middle):
            high = middle
        else:
            low = middle
    logger.info(f"eta threshold {high:.12g} (closed form {cert.eta_certified})")
    return high
