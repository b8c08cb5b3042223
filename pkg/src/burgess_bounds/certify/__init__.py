"""Rigorous interval certification of the numerical inequalities and exact-sum lemma checks."""

from .constants import compute_delta, zeta_prime_2
from .interval import IntervalReal
from .mean_values import verify_mobius_lemma, verify_phi_sum_lemma, verify_vA_lemmas
from .claims import CLAIMS, Claim, verify_section5_claims

__all__ = [
    "CLAIMS",
    "Claim",
    "IntervalReal",
    "compute_delta",
    "verify_mobius_lemma",
    "verify_phi_sum_lemma",
    "verify_section5_claims",
    "verify_vA_lemmas",
    "zeta_prime_2",
]
