"""Exact-sum checks for the v_A lemmas and the Mobius / totient partial sums."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from ..reports import FAIL, PASS, VerificationReport
from . import interval as iv
from .constants import compute_delta, mobius_log_constant, six_over_pi_sq
from .interval import IntervalReal


def mobius_sieve(n: int) -> np.ndarray:
    """mu(k) for k = 0..n (mu(0) set to 0)."""
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    is_comp = np.zeros(n + 1, dtype=bool)
    for p in range(2, n + 1):
        if is_comp[p]:
            continue
        is_comp[2 * p::p] = True
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def phi_sieve(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def _aggregate(claim_id: str, params: dict, worst_lo, worst_hi, failures: list, notes: str = "") -> VerificationReport:
    status = PASS if not failures and worst_lo > 0 else FAIL
    if failures:
        notes = (notes + "; " if notes else "") + f"violations at {failures[:10]}"
    return VerificationReport(claim_id, "certify", params, status, float(worst_lo), float(worst_hi),
                              notes=notes)


def verify_mobius_lemma(N_max: int) -> list[VerificationReport]:
    """Both Mobius partial-sum envelopes for every 2 <= N <= N_max.

    sum_{d<=N} mu(d)/d^2 is accumulated as an exact Fraction;
    sum_{d<=N} mu(d) log(d)/d^2 is accumulated in interval arithmetic.
    Margins are envelope minus deviation; the worst over N is reported.
    """
    if N_max < 2:
        raise ValueError("N_max must be at least 2")
    mu = mobius_sieve(N_max)
    c1 = six_over_pi_sq()
    c2 = mobius_log_constant()
    s1 = Fraction(1)
    s2 = IntervalReal(0)
    worst1 = (math.inf, math.inf, None)
    worst2 = (math.inf, math.inf, None)
    bad1, bad2 = [], []
    for N in range(2, N_max + 1):
        m = int(mu[N])
        if m:
            s1 += Fraction(m, N * N)
            s2 = s2 + m * iv.log(N) / (N * N)
        env1 = IntervalReal(1) / (N - 1)
        margin1 = env1 - abs(IntervalReal(s1) - c1)
        env2 = (iv.log(N - 1) + 1) / (N - 1)
        margin2 = env2 - abs(s2 - c2)
        if margin1.lo <= 0:
            bad1.append(N)
        if margin2.lo <= 0:
            bad2.append(N)
        if margin1.lo < worst1[0]:
            worst1 = (margin1.lo, margin1.hi, N)
        if margin2.lo < worst2[0]:
            worst2 = (margin2.lo, margin2.hi, N)
    return [
        _aggregate("mobius_sum", {"N_max": N_max, "worst_N": worst1[2]}, worst1[0], worst1[1], bad1,
                   "envelope 1/(N-1) around 6/pi^2"),
        _aggregate("mobius_log_sum", {"N_max": N_max, "worst_N": worst2[2]}, worst2[0], worst2[1], bad2,
                   "envelope (log(N-1)+1)/(N-1) around 36 zeta'(2)/pi^4"),
    ]


def phi_sum_rhs(N: int, delta: IntervalReal | None = None) -> IntervalReal:
    delta = compute_delta() if delta is None else delta
    L = iv.log(N)
    return six_over_pi_sq() * L + delta + (2 * L + 2) / (N - 1)


def verify_phi_sum_lemma(N_max: int) -> list[VerificationReport]:
    """sum_{n<=N} phi(n)/n^2 (exact) against the stated bound for 2 <= N <= N_max."""
    if N_max < 2:
        raise ValueError("N_max must be at least 2")
    phi = phi_sieve(N_max)
    delta = compute_delta()
    c1 = six_over_pi_sq()
    s = Fraction(1)
    worst = (math.inf, math.inf, None)
    bad = []
    for N in range(2, N_max + 1):
        s += Fraction(int(phi[N]), N * N)
        L = iv.log(N)
        margin = c1 * L + delta + (2 * L + 2) / (N - 1) - IntervalReal(s)
        if margin.lo <= 0:
            bad.append(N)
        if margin.lo < worst[0]:
            worst = (margin.lo, margin.hi, N)
    return [_aggregate("phi_sum", {"N_max": N_max, "worst_N": worst[2]}, worst[0], worst[1], bad)]


# --- v_A sums -------------------------------------------------------------------

def a_set(q: int, A) -> list[int]:
    """{1 <= a <= A : gcd(a, q) = 1}."""
    return [a for a in range(1, math.floor(A) + 1) if math.gcd(a, q) == 1]


def v_A_counts(q: int, A, M: int, N: int) -> np.ndarray:
    """v_A(x) for x = 0..q-1 by direct enumeration of the pairs (a, n)."""
    v = np.zeros(q, dtype=np.int64)
    n = np.arange(M + 1, M + N + 1, dtype=np.int64)
    for a in a_set(q, A):
        abar = pow(a, -1, q) if q > 1 else 0
        v += np.bincount((abar * n) % q, minlength=q)
    return v


def pair_count_rhs(q: int, A, N: int) -> Fraction:
    As = a_set(q, A)
    return sum((1 + Fraction(N * math.gcd(a1, a2), max(a1, a2)) for a1 in As for a2 in As), Fraction(0))


def square_sum_rhs(q: int, A, N: int, delta: IntervalReal | None = None) -> IntervalReal:
    delta = compute_delta() if delta is None else delta
    Ai = IntervalReal(Fraction(A))
    L = iv.log(Ai)
    k = len(a_set(q, A))
    return k * k + 2 * Ai * N * (six_over_pi_sq() * L + delta + (2 * L + 2) / (Ai - 1))


def sample_instance(rng: random.Random, q_max: int = 10**4, A_max: int = 50, N_max: int = 10**3,
                    M_abs: int = 10**6) -> tuple[int, Fraction, int, int]:
    """Random (q, A, M, N) with A*N < q, the range where the square-sum bounds apply.

    A is a two-decimal rational so instances are exactly reproducible.
    """
    while True:
        q = rng.randint(2, q_max)
        A = Fraction(rng.randint(200, A_max * 100), 100)
        N = rng.randint(1, N_max)
        if A * N < q:
            M = rng.randint(-M_abs, M_abs)
            return q, A, M, N


def verify_vA_lemmas(trials: int, seed: int) -> list[VerificationReport]:
    """Exact sum identity and both square-sum bounds on seeded random instances."""
    rng = random.Random(seed)
    delta = compute_delta()
    eq_fail, pairs_fail, delta_fail = [], [], []
    worst_pairs = (math.inf, math.inf)
    worst_delta = (math.inf, math.inf)
    for _ in range(trials):
        q, A, M, N = sample_instance(rng)
        v = v_A_counts(q, A, M, N)
        k = len(a_set(q, A))
        if int(v.sum()) != k * N:
            eq_fail.append((q, str(A), M, N))
        sq = int((v * v).sum())
        margin_pairs = pair_count_rhs(q, A, N) - sq
        if margin_pairs < 0:
            pairs_fail.append((q, str(A), M, N))
        # relative margins keep instances of different size comparable
        rel_pairs = float(margin_pairs / pair_count_rhs(q, A, N))
        worst_pairs = min(worst_pairs, (rel_pairs, rel_pairs))
        rhs_delta = square_sum_rhs(q, A, N, delta)
        margin_delta = (rhs_delta - sq) / rhs_delta
        if margin_delta.lo <= 0:
            delta_fail.append((q, str(A), M, N))
        worst_delta = min(worst_delta, (float(margin_delta.lo), float(margin_delta.hi)))
    params = {"trials": trials, "seed": seed}
    out = [VerificationReport("vA_sum", "certify", params, FAIL if eq_fail else PASS,
                              None, None, notes=f"exact equality failed for {eq_fail[:5]}" if eq_fail
                              else "exact equality on every instance", seed=seed)]
    notes = "relative margin (rhs - sum v^2) / rhs; instances drawn with A*N < q"
    # The pair-count bound can be attained exactly (e.g. A < 2 leaves one element), so >= 0 is a pass.
    out.append(VerificationReport("vA_square_sum_pairs", "certify", params,
                                  FAIL if pairs_fail else PASS, worst_pairs[0] if worst_pairs[0] > 0 else None, worst_pairs[1],
                                  notes=notes, seed=seed))
    out.append(_aggregate("vA_square_sum_delta", params, worst_delta[0], worst_delta[1], delta_fail, notes))
    out[-1].seed = seed
    return out
