"""
Qubit geometry

This package provides:
- BlochConfig and rank-1 correlation matrices E = a . b
- Noisy (detection-efficiency) and white-noise correlation families
- Alternating lower bounds on q(M)
- Line packings and the vector file format
"""

from .bloch import (
    BlochConfig,
    EtaFamily,
    correlation_matrix,
    noisy_family,
    normalize_rows,
    q_lowerbound_alternate,
    q_value,
    visibility_family,
)
from .packing import gen_packing, min_line_angle
from .vector_io import load_vectors, save_vectors

__all__ = [
    "BlochConfig",
    "EtaFamily",
    "correlation_matrix",
    "noisy_family",
    "normalize_rows",
    "visibility_family",
    "q_value",
    "q_lowerbound_alternate",
    "gen_packing",
    "min_line_angle",
    "load_vectors",
    "save_vectors",
]
