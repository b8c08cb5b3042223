import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burgess_bounds.arithmetic import (
    FactoredInteger,
    divisors,
    euler_phi,
    factorize,
    is_cubefree,
    is_probable_prime,
    m_r,
    m_r_exact,
    mobius,
    omega,
    tau,
    tau_k,
)


# --- brute-force oracles ----------------------------------------------------------

def trial_factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def phi_count(n):
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def tau_k_count(n, k):
    """Ordered k-tuples of positive integers with product n."""
    divs = [d for d in range(1, n + 1) if n % d == 0]
    if k == 1:
        return 1
    return sum(tau_k_count(n // d, k - 1) for d in divs)


def mobius_def(n):
    f = trial_factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


# --- examples ---------------------------------------------------------------------

@pytest.mark.parametrize("n, expected", [(12, {2: 2, 3: 1}), (1, {}), (8051, {83: 1, 97: 1})])
def test_factorize_examples(n, expected):
    assert factorize(n).as_dict() == expected


@pytest.mark.parametrize("bad", [0, -5])
def test_factorize_rejects_non_positive(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_factorize_rejects_non_integer():
    with pytest.raises(TypeError):
        factorize(2.5)


def test_factorize_large_semiprime():
    p, q = 1000000007, 998244353
    assert factorize(p * q).as_dict() == {q: 1, p: 1}
    n = 2**61 - 1
    assert factorize(n).as_dict() == {n: 1}


@pytest.mark.parametrize("n, expected", [(12, 4), (1, 1), (97, 96)])
def test_phi_examples(n, expected):
    assert euler_phi(factorize(n)) == expected


@pytest.mark.parametrize("n, k, expected", [(12, 2, 6), (3, 4, 4), (12, 4, 40)])
def test_tau_k_examples(n, k, expected):
    assert tau_k(factorize(n), k) == expected


def test_small_function_examples():
    assert (omega(12), mobius(12), is_cubefree(12)) == (2, 0, True)
    assert mobius(6) == 1 and not is_cubefree(8)
    assert (omega(1), mobius(1), is_cubefree(360)) == (0, 1, False)


@pytest.mark.parametrize("n, expected", [(12, Fraction(3)), (3, Fraction(3, 4)), (1, Fraction(1, 8))])
def test_m_r_examples(n, expected):
    assert m_r_exact(factorize(n), 2) == expected
    assert m_r(n, 2) == pytest.approx(float(expected))


def test_m_r_brute_force_terms():
    for n in range(1, 200):
        for r in (2, 3):
            terms = [Fraction(tau_k_count(n, 2 * r)), Fraction(tau(n), 2) ** (2 * r - 1), Fraction(n, 2 * r)]
            assert m_r_exact(n, r) == min(terms)


def test_factored_integer_validation():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(6, ((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(0, ())
    huge = FactoredInteger.from_factors({2: 5000, 3: 1})
    assert int(huge) == 2**5000 * 3
    assert omega(huge) == 2 and tau(huge) == 5001 * 2


# --- properties against oracles ------------------------------------------------------

def test_agrees_with_brute_force_up_to_500():
    for n in range(1, 501):
        f = factorize(n)
        assert f.as_dict() == trial_factor(n)
        assert euler_phi(f) == phi_count(n)
        assert tau(f) == sum(1 for d in range(1, n + 1) if n % d == 0)
        assert mobius(f) == mobius_def(n)
        assert divisors(f) == [d for d in range(1, n + 1) if n % d == 0]
        assert is_cubefree(f) == all(n % (p**3) for p in range(2, n + 1))


def test_tau_k_against_enumeration():
    for n in range(1, 60):
        for k in (2, 3, 4):
            assert tau_k(n, k) == tau_k_count(n, k)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_multiplicativity(a, b):
    if math.gcd(a, b) != 1:
        return
    assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)
    assert tau(a * b) == tau(a) * tau(b)
    assert tau_k(a * b, 4) == tau_k(a, 4) * tau_k(b, 4)
    assert mobius(a * b) == mobius(a) * mobius(b)
    assert omega(a * b) == omega(a) + omega(b)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10**12))
def test_factorization_product_and_primality(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_probable_prime(p) for p, _ in f.factors)
    assert list(f.factors) == sorted(f.factors)


def test_primality_against_sieve():
    limit = 20000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = [False] * len(sieve[i * i::i])
    assert all(is_probable_prime(n) == sieve[n] for n in range(limit))
    # Carmichael numbers and strong pseudoprimes to small bases
    for n in (561, 1105, 1729, 2047, 3215031751, 3825123056546413051):
        assert not is_probable_prime(n)


def test_tau_k_recursion():
    for n in range(1, 120):
        for k in (3, 4, 6):
            assert tau_k(n, k) == sum(tau_k(d, k - 1) for d in divisors(n))


def test_sum_of_phi_over_divisors():
    for n in range(1, 300):
        assert sum(euler_phi(d) for d in divisors(n)) == n


def test_tau_k_matches_tuple_count_small():
    n = 36
    count = sum(1 for t in itertools.product(divisors(n), repeat=3) if math.prod(t) == n)
    assert tau_k(n, 3) == count
