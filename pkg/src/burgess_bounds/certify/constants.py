"""Rigorous enclosures of zeta'(2), 6/pi^2 and delta = 6/pi^2 - 36 zeta'(2)/pi^4."""

from __future__ import annotations

import math
from functools import lru_cache

from . import interval as iv
from .interval import IntervalReal

ZETA_PRIME_TERMS = 10**5


@lru_cache(maxsize=4)
def zeta_prime_2(terms: int = ZETA_PRIME_TERMS) -> IntervalReal:
    """zeta'(2) = -sum_{n>=2} log(n)/n^2.

    The tail past ``terms`` is squeezed between integrals of the decreasing
    function log(t)/t^2 (decreasing for t > sqrt(e)):
    (log(N+1)+1)/(N+1) <= tail <= (log N + 1)/N.
    """
    if terms < 2:
        raise ValueError("need at least two terms")
    # log n for composite n is log p + log(n/p) with p its smallest prime factor,
    # so interval logs are only taken at primes.
    spf = list(range(terms + 1))
    for i in range(2, math.isqrt(terms) + 1):
        if spf[i] == i:
            for j in range(i * i, terms + 1, i):
                if spf[j] == j:
                    spf[j] = i
    logs = [None] * (terms + 1)
    acc = iv.ctx.mpf(0)
    for n in range(2, terms + 1):
        p = spf[n]
        logs[n] = iv.ctx.log(n) if p == n else logs[p] + logs[n // p]
        acc += logs[n] / (n * n)
    s = IntervalReal._wrap(acc)
    n = terms
    tail_hi = (iv.log(n) + 1) / n
    tail_lo = (iv.log(n + 1) + 1) / (n + 1)
    tail = IntervalReal(tail_lo.lo, tail_hi.hi)
    return -(s + tail)


def six_over_pi_sq() -> IntervalReal:
    return 6 / iv.pi() ** 2


@lru_cache(maxsize=4)
def mobius_log_constant(terms: int = ZETA_PRIME_TERMS) -> IntervalReal:
    """36 zeta'(2) / pi^4, the limit of sum mu(d) log(d) / d^2."""
    return 36 * zeta_prime_2(terms) / iv.pi() ** 4


@lru_cache(maxsize=4)
def compute_delta(terms: int = ZETA_PRIME_TERMS) -> IntervalReal:
    return six_over_pi_sq() - mobius_log_constant(terms)
