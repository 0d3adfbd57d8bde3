"""Cube complexes modelling configuration spaces, and their rational homology."""

from __future__ import annotations

__all__ = [
    "BettiVector",
    "CubeComplex",
    "NonvanishingCertificate",
    "betti",
    "build",
    "certify_nonvanishing",
    "check_boundary",
    "euler_characteristic",
    "exact_rank",
    "export_chain_complex",
    "rank_mod_p",
]

from .complex import (
    BettiVector,
    CubeComplex,
    NonvanishingCertificate,
    betti,
    build,
    certify_nonvanishing,
    check_boundary,
    euler_characteristic,
    export_chain_complex,
)
from .rank import exact_rank, rank_mod_p
