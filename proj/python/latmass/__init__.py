"""Exact verifier for nonfreeness of symmetric Hilbert modular form algebras over Q(sqrt d)."""

from ._latmass import (
    K_prime,
    hilbert_symbol,
    invariant_factors,
    kronecker,
    ldata,
    scan,
    two_adic_symbol,
    verify,
    zeta_siegel_oracle,
)

__all__ = [
    "K_prime",
    "hilbert_symbol",
    "invariant_factors",
    "kronecker",
    "ldata",
    "scan",
    "two_adic_symbol",
    "verify",
    "zeta_siegel_oracle",
]


def survivors(d_min: int, d_max: int, jobs: int = 1) -> list[int]:
    """Values of d in the range that the verifier does not rule out."""
    return [r["d"] for r in scan(d_min, d_max, "exact", jobs) if r["outcome"] != "NotFree"]
