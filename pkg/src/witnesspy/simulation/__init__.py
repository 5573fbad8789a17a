"""
Classical one-bit protocol simulation

This package provides:
- simulate_gg: Monte Carlo estimates for one (a, b) pair
- gg_matrix: coarse-grained estimates for a whole Bloch configuration
- one_bit_bound_holds: check a simulated model against L_2(M)
"""

from .gisin import ProtocolSample, SimReport, gg_matrix, one_bit_bound_holds, sample_protocol, simulate_gg

__all__ = [
    "ProtocolSample",
    "SimReport",
    "sample_protocol",
    "simulate_gg",
    "gg_matrix",
    "one_bit_bound_holds",
]
