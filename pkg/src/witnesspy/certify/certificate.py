"""
Certificate types and floating-point-safe witness sums

A certificate bundles the exact one-bit bound L_2(M), the entry sum S(M) and
an achievable qubit value q_lb with a rigorous bound on its floating-point
error, and derives the constants

    K_PM >= q_lb / L_2            K_D >= (q_lb - S) / (L_2 - S)

together with the thresholds p = L_2 / q_lb (white-noise visibility) and
eta = (L_2 - S) / (q_lb - S) (detection efficiency).
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union
import logging
import math

import numpy as np

from ..core import WitnessMatrix
from ..errors import DegenerateRatioError
from ..geometry import BlochConfig
from ..utils.serialization_utils import SerializationUtils

logger = logging.getLogger(__name__)

# Rounding levels covered by the error bound: the products and the summation.
REDUCTION_LEVELS = 2
UNIT_ERROR = 2.0 ** -48
FLOAT_SLACK = 4 * np.finfo(np.float64).eps


@dataclass(frozen=True)
class ReferenceBounds:
    """Published bounds on the constants, used for report comparisons only."""

    kg3_lower: float = 1.4367
    kg3_upper: float = 1.4546
    kd_lower: float = 1.5682
    kd_upper: float = 2.0
    eta_crit_upper: float = 0.6377
    white_noise_lower: float = 0.3039
    white_noise_upper: float = 0.3125


REFERENCE_BOUNDS = ReferenceBounds()


def certified_sum(
    matrix: WitnessMatrix, values: np.ndarray, a_deviation: float = 0.0, b_deviation: float = 0.0
) -> Tuple[float, float]:
    """
    Compensated evaluation of sum M_{x,y} values_{x,y} with an error bound.

    The sum is computed with math.fsum. The bound charges
    n * m * max|M| * 2^-48 per rounding level for values in [-1, 1], plus
    sum|M| * (da + db + da db) when values are dot products of vectors whose
    norms deviate from 1 by at most da and db.

    Args:
        matrix: Integer witness matrix
        values: n x m real values, typically correlations
        a_deviation: Largest | ||a_x|| - 1 |
        b_deviation: Largest | ||b_y|| - 1 |

    Returns:
        (value, error_bound)

    Examples:
        >>> certified_sum(gen_family(2), np.ones((2, 2)))[0]
        2.0
    """
    values = np.asarray(values, dtype=np.float64)
    if values.shape != matrix.shape:
        raise ValueError(f"Values are {values.shape[0]}x{values.shape[1]}, matrix is {matrix.n}x{matrix.m}")
    terms = matrix.entries.astype(np.float64) * values
    value = math.fsum(terms.ravel().tolist())
    peak = max(1.0, float(np.abs(values).max()))
    rounding = REDUCTION_LEVELS * matrix.n * matrix.m * matrix.max_abs() * peak * UNIT_ERROR
    normalization = matrix.manhattan() * (a_deviation + b_deviation + a_deviation * b_deviation)
    return value, rounding + normalization


def norm_deviation(vectors: np.ndarray) -> float:
    """Largest deviation of a row norm from 1."""
    return float(np.abs(np.linalg.norm(vectors, axis=1) - 1.0).max())


@dataclass(frozen=True, eq=False)
class Certificate:
    """
    Certified bounds derived from one witness matrix.

    Attributes:
        matrix: Witness matrix M
        l2_exact: Exact L_2(M)
        s: S(M)
        q_lb: Achievable value sum M a . b
        q_error: Rigorous bound on the floating-point error of q_lb
        ratio_kpm: q_lb / L_2
        ratio_kd: (q_lb - S) / (L_2 - S), None when L_2 = S
        eta_certified: 1 / ratio_kd, None when undefined
        p_certified: 1 / ratio_kpm
        margin_ok: q_lb - q_error > L_2 strictly
        kpm_rational: floor(q_lb - q_error) / L_2 as an exact fraction
        kd_rational: (floor(q_lb - q_error) - S) / (L_2 - S), None when L_2 = S
        config: Bloch configuration attaining q_lb
    """

    matrix: WitnessMatrix
    l2_exact: int
    s: int
    q_lb: float
    q_error: float
    ratio_kpm: float
    ratio_kd: Optional[float]
    eta_certified: Optional[float]
    p_certified: float
    margin_ok: bool
    kpm_rational: Fraction
    kd_rational: Optional[Fraction]
    config: Optional[BlochConfig] = None

    @classmethod
    def build(
        cls, matrix: WitnessMatrix, l2_exact: int, q_lb: float, q_error: float, config: Optional[BlochConfig] = None
    ) -> "Certificate":
        """
        Derive every ratio from L_2, S and the certified q value.

        Raises:
            DegenerateRatioError: If L_2 = 0 or q_lb = 0 (zero matrix)
        """
        s = matrix.sum_S()
        if l2_exact <= 0 or q_lb <= 0:
            raise DegenerateRatioError(f"Ratios undefined for L2 = {l2_exact}, q_lb = {q_lb}")
        floor_q = math.floor(q_lb - q_error)
        ratio_kd = None
        eta_certified = None
        kd_rational = None
        if l2_exact != s:
            ratio_kd = (q_lb - s) / (l2_exact - s)
            kd_rational = Fraction(floor_q - s, l2_exact - s)
            if q_lb != s:
                eta_certified = (l2_exact - s) / (q_lb - s)
        else:
            logger.warning(f"L2 = S = {s}: the detection-efficiency ratio is undefined")
        return cls(
            matrix=matrix,
            l2_exact=int(l2_exact),
            s=int(s),
            q_lb=float(q_lb),
            q_error=float(q_error),
            ratio_kpm=q_lb / l2_exact,
            ratio_kd=ratio_kd,
            eta_certified=eta_certified,
            p_certified=l2_exact / q_lb,
            margin_ok=(q_lb - q_error) > l2_exact,
            kpm_rational=Fraction(floor_q, l2_exact),
            kd_rational=kd_rational,
            config=config,
        )

    @property
    def white_noise_tolerance(self) -> float:
        """1 - p_certified, the certified white-noise tolerance."""
        return 1.0 - self.p_certified

    def eta_violated(self, eta: float) -> bool:
        """
        True iff eta (q_lb - err) + (1 - eta) S > L_2 with rounding slack.

        Examples:
            >>> cert.eta_violated(1.0) == cert.margin_ok
            True
        """
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {eta}")
        lower = eta * (self.q_lb - self.q_error) + (1.0 - eta) * self.s
        slack = FLOAT_SLACK * (abs(eta * self.q_lb) + abs(self.s) + abs(self.l2_exact))
        return lower - self.l2_exact > slack

    def to_dict(self) -> Dict[str, Any]:
        """Flat mapping for the machine-readable certificate file."""
        reference = REFERENCE_BOUNDS
        return {
            "n": self.matrix.n,
            "m": self.matrix.m,
            "l2_exact": self.l2_exact,
            "s": self.s,
            "q_lb": self.q_lb,
            "q_error": self.q_error,
            "ratio_kpm": self.ratio_kpm,
            "ratio_kd": self.ratio_kd,
            "eta_certified": self.eta_certified,
            "p_certified": self.p_certified,
            "white_noise_tolerance": self.white_noise_tolerance,
            "margin_ok": self.margin_ok,
            "kpm_rational": self.kpm_rational,
            "kd_rational": self.kd_rational,
            "kpm_above_kg3_lower": self.margin_ok and self.kpm_rational > Fraction(str(reference.kg3_lower)),
            "kd_above_reference": self.kd_rational is not None and self.kd_rational > Fraction(str(reference.kd_lower)),
        }

    def report(self) -> str:
        """Human-readable certificate."""
        reference = REFERENCE_BOUNDS
        lines = [
            f"Certificate for {self.matrix.n}x{self.matrix.m} witness",
            SerializationUtils.format_key_values(self.to_dict()),
            "",
            f"Reference: {reference.kg3_lower} <= K_G(3) <= {reference.kg3_upper}, "
            f"{reference.kd_lower} <= K_D <= {reference.kd_upper}, "
            f"{reference.white_noise_lower} <= 1 - p_crit <= {reference.white_noise_upper}",
        ]
        if not self.margin_ok:
            lines.append("Margin NOT certified: q_lb - error does not exceed L2")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Certificate(L2={self.l2_exact}, S={self.s}, q_lb={self.q_lb:.12g}, margin_ok={self.margin_ok})"


def write_certificate(cert: Certificate, path: Union[str, Path]) -> None:
    """Write the machine-readable certificate file."""
    SerializationUtils.write_key_values(cert.to_dict(), path)
    logger.info(f"Wrote certificate to {path}")


def load_certificate_summary(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a certificate file back; rational entries become Fractions.

    Raises:
        FileNotFoundError: If the file does not exist
    """
    data = SerializationUtils.read_key_values(path)
    for key in ("kpm_rational", "kd_rational"):
        if data.get(key) is not None:
            data[key] = SerializationUtils.parse_fraction(data[key])
    return data
