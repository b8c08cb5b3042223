"""Integer factorization and multiplicative arithmetic functions.

Everything here works on :class:`FactoredInteger`, an immutable pairing of a
positive integer with its prime factorization.  Factorization is trial
division up to ``10**6`` followed by Brent's variant of Pollard rho, which is
plenty for the moduli (``q <= 10**12`` or so) that the verification sweeps use.
Huge moduli can be built directly from a known factorization with
:meth:`FactoredInteger.from_factors`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"FactoredInteger requires a positive value, got {self.value}")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @classmethod
    def from_factors(cls, factors: Mapping[int, int] | Iterable[tuple[int, int]]) -> "FactoredInteger":
        """Build from a known factorization; primality of the keys is trusted."""
        items = factors.items() if isinstance(factors, Mapping) else factors
        fs = tuple(sorted((int(p), int(e)) for p, e in items if e))
        value = 1
        for p, e in fs:
            value *= p**e
        return cls(value, fs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __int__(self):
        return self.value

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a non-trivial factor of the composite ``n``."""
    if n % 2 == 0:
        return 2
    # Fixed seed sequence keeps factorization deterministic run to run.
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=65536)
def factorize(n: int) -> FactoredInteger:
    """Factor a positive integer.

    >>> factorize(12).factors
    ((2, 2), (3, 1))
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"factorize expects an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p = 5
    step = 2
    while p * p <= m and p <= TRIAL_LIMIT:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += step
        step = 6 - step
    if m > 1:
        if p * p > m:
            out[m] = out.get(m, 0) + 1
        else:
            _split_large(m, out)
    return FactoredInteger.from_factors(out)


def _as_factored(f: FactoredInteger | int) -> FactoredInteger:
    return f if isinstance(f, FactoredInteger) else factorize(int(f))


def euler_phi(f: FactoredInteger | int) -> int:
    f = _as_factored(f)
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def tau_k(f: FactoredInteger | int, k: int) -> int:
    """Number of ordered factorizations of ``f`` into ``k`` positive factors."""
    if k < 1:
        raise ValueError("tau_k requires k >= 1")
    f = _as_factored(f)
    out = 1
    for _, e in f.factors:
        out *= math.comb(e + k - 1, k - 1)
    return out


def tau(f: FactoredInteger | int) -> int:
    return tau_k(f, 2)


def omega(f: FactoredInteger | int) -> int:
    return len(_as_factored(f).factors)


def mobius(f: FactoredInteger | int) -> int:
    f = _as_factored(f)
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def is_cubefree(f: FactoredInteger | int) -> bool:
    return all(e <= 2 for _, e in _as_factored(f).factors)


def m_r_exact(f: FactoredInteger | int, r: int) -> Fraction:
    """min{tau_{2r}(q), (tau(q)/2)^(2r-1), q/(2r)} as an exact rational."""
    if r < 2:
        raise ValueError("m_r requires r >= 2")
    f = _as_factored(f)
    return min(
        Fraction(tau_k(f, 2 * r)),
        Fraction(tau(f), 2) ** (2 * r - 1),
        Fraction(f.value, 2 * r),
    )


def m_r(f: FactoredInteger | int, r: int) -> float:
    return float(m_r_exact(f, r))


def divisors(f: FactoredInteger | int) -> list[int]:
    f = _as_factored(f)
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)
