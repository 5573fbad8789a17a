"""
Certification of quantumness witnesses

This package provides:
- Certificate with exact and floating ratios for K_PM and K_D
- certify_witness, check_violation and eta_bisect
- Certificate file writing and reading
"""

from .certificate import (
    REFERENCE_BOUNDS,
    Certificate,
    ReferenceBounds,
    certified_sum,
    load_certificate_summary,
    norm_deviation,
    write_certificate,
)
from .pipeline import ViolationReport, certify_witness, check_violation, eta_bisect

__all__ = [
    "REFERENCE_BOUNDS",
    "Certificate",
    "ReferenceBounds",
    "ViolationReport",
    "certified_sum",
    "norm_deviation",
    "certify_witness",
    "check_violation",
    "eta_bisect",
    "write_certificate",
    "load_certificate_summary",
]
