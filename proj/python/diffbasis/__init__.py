"""Minimal difference bases and Fourier lower bounds on d*."""

import json

from . import _diffbasis
from ._diffbasis import (
    combinatorial_lower_bound,
    covers,
    leech_rr_bound,
    nu_hat,
    redei_renyi_bound,
    run_cli,
    theta_star,
    toeplitz_psd,
    trivial_basis,
)

__all__ = [
    "brute_force_min_basis",
    "combinatorial_lower_bound",
    "covers",
    "improved_bound",
    "leech_rr_bound",
    "min_basis",
    "nu_hat",
    "paper_chain",
    "redei_renyi_bound",
    "refute_alpha",
    "run_cli",
    "theta_star",
    "toeplitz_psd",
    "trivial_basis",
]


def min_basis(n, workers=1, timeout=60.0):
    """D(n) with the lexicographically least canonical witness."""
    return json.loads(_diffbasis._min_basis(n, workers, timeout))


def brute_force_min_basis(n):
    return json.loads(_diffbasis._brute_force_min_basis(n))


def paper_chain():
    return json.loads(_diffbasis._paper_chain())


def refute_alpha(alpha, K, budget=1_000_000, workers=1):
    return json.loads(_diffbasis._refute_alpha(alpha, K, budget, workers))


def improved_bound(K, budget=1_000_000, seed=1):
    return json.loads(_diffbasis._improved_bound(K, budget, seed))
