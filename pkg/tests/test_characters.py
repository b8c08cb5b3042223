import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burgess_bounds.arithmetic import euler_phi, factorize
from burgess_bounds.characters import (
    CharacterValue,
    char_sum,
    char_sum_exact_counts,
    character_by_index,
    complete_poly_sum,
    conductor,
    enumerate_characters,
    evaluate,
    root_sum_is_zero,
    unit_group,
)


def primitive_count(q):
    """Multiplicative count of primitive characters: p -> p-2, p^e -> p^(e-2)(p-1)^2."""
    out = 1
    for p, e in factorize(q).factors:
        out *= p - 2 if e == 1 else p ** (e - 2) * (p - 1) ** 2
    return out


def brute_conductor(chi):
    q = chi.q
    for d in sorted(d for d in range(1, q + 1) if q % d == 0):
        if all(chi(n) == pytest.approx(1) for n in range(1, q + 1)
               if math.gcd(n, q) == 1 and n % d == 1 % d):
            return d
    raise AssertionError


def legendre(a, p):
    v = pow(a, (p - 1) // 2, p)
    return -1 if v == p - 1 else v


# --- unit groups ----------------------------------------------------------------------

def test_unit_group_examples():
    g5 = unit_group(5)
    assert len(g5.components) == 1 and g5.orders == (4,)
    g8 = unit_group(8)
    assert len(g8.components) == 1 and sorted(g8.orders) == [2, 2]
    g12 = unit_group(12)
    assert len(g12.components) == 2 and g12.order == 4


def test_logs_reconstruct_residues():
    for q in (7, 8, 9, 16, 24, 45, 100, 128, 243, 1000):
        g = unit_group(q)
        for n in range(q):
            logs = g.logs(n)
            if math.gcd(n, q) != 1:
                assert logs is None
                continue
            pos = 0
            for c in g.components:
                v = 1
                for gen in c.generators:
                    v = v * pow(gen, logs[pos], c.prime_power) % c.prime_power
                    pos += 1
                assert v == n % c.prime_power
            assert pos == len(logs)


def test_large_prime_power_uses_discrete_log():
    q = 3**15  # past the table limit
    g = unit_group(q)
    for n in (2, 5, 10**6 + 3, q - 1):
        (k,) = g.logs(n)
        assert pow(g.components[0].generators[0], k, q) == n % q


# --- enumeration --------------------------------------------------------------------

def test_enumeration_examples():
    assert len(enumerate_characters(5)) == 4
    assert len(enumerate_characters(12, primitive_only=True)) == 1
    assert len(enumerate_characters(1)) == 1


@pytest.mark.parametrize("q", list(range(1, 121)))
def test_counts_and_conductors(q):
    chars = enumerate_characters(q)
    assert len(chars) == euler_phi(q)
    assert len(set(chars)) == len(chars)
    prim = [c for c in chars if c.is_primitive]
    assert len(prim) == primitive_count(q)
    assert prim == enumerate_characters(q, primitive_only=True)
    if q <= 60:
        for c in chars:
            assert conductor(c) == brute_conductor(c)


def test_conductor_examples():
    principal = enumerate_characters(12)[0]
    assert principal.is_principal and conductor(principal) == 1
    quad5 = character_by_index(5, 1, primitive_only=True)
    assert quad5.order == 2 and conductor(quad5) == 5
    induced = [c for c in enumerate_characters(12) if conductor(c) == 3]
    assert len(induced) == 1
    assert [induced[0](n) for n in (1, 5, 7, 11)] == pytest.approx([1, -1, 1, -1])


# --- values ---------------------------------------------------------------------------

def test_eval_examples():
    quad5 = character_by_index(5, 1, primitive_only=True)
    v = evaluate(quad5, 2)
    assert (v.numerator, v.denominator) == (1, 2)
    assert complex(v) == -1
    for c in enumerate_characters(12):
        assert evaluate(c, 6).is_zero
        assert evaluate(c, 1) == CharacterValue.root(0, 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101, 1009])
def test_quadratic_character_is_legendre(p):
    quad = [c for c in enumerate_characters(p) if c.order == 2]
    assert len(quad) == 1
    for a in range(1, min(p, 300)):
        assert quad[0](a) == pytest.approx(legendre(a, p))


@pytest.mark.parametrize("q", [5, 8, 12, 15, 16, 21, 36, 40])
def test_orthogonality(q):
    chars = enumerate_characters(q)
    phi = euler_phi(q)
    for n in range(q):
        tot = sum(c(n) for c in chars)
        expected = phi if n % q == 1 % q else 0
        assert abs(tot - expected) < 1e-9
    for c in chars:
        tot = sum(c(n) for n in range(q))
        assert abs(tot - (phi if c.is_principal else 0)) < 1e-9


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 400), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 1000))
def test_complete_multiplicativity_and_periodicity(q, m, n, idx):
    chars = enumerate_characters(q)
    c = chars[idx % len(chars)]
    assert evaluate(c, m) * evaluate(c, n) == evaluate(c, m * n)
    assert evaluate(c, n) == evaluate(c, n + q)
    assert evaluate(c, n).conjugate() == evaluate(c.conjugate(), n)


def test_values_array_matches_eval():
    for q in (9, 20, 63):
        for c in enumerate_characters(q):
            arr = c.values()
            for n in range(q):
                assert arr[n] == pytest.approx(complex(evaluate(c, n)))


def test_character_value_validation():
    with pytest.raises(ValueError):
        CharacterValue(2, 4)
    with pytest.raises(ValueError):
        CharacterValue(5, 3)
    assert CharacterValue.root(7, 4) == CharacterValue(3, 4)


# --- sums -----------------------------------------------------------------------------

def test_char_sum_examples():
    for c in enumerate_characters(5):
        if not c.is_principal:
            assert abs(char_sum(c, 0, 5)) < 1e-12
        assert char_sum(c, 0, 1) == pytest.approx(1)
    quad5 = character_by_index(5, 1, primitive_only=True)
    assert abs(char_sum(quad5, 0, 2)) < 1e-12
    assert root_sum_is_zero(char_sum_exact_counts(quad5, 0, 2))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 200), st.integers(-10**6, 10**6), st.integers(1, 700), st.integers(0, 500))
def test_char_sum_matches_naive(q, M, N, idx):
    chars = enumerate_characters(q)
    c = chars[idx % len(chars)]
    naive = sum(c(n) for n in range(M + 1, M + N + 1))
    assert abs(char_sum(c, M, N) - naive) < 1e-8 * max(1, N)
    exact_zero = root_sum_is_zero(char_sum_exact_counts(c, M, N))
    if exact_zero:
        assert abs(naive) < 1e-8 * max(1, N)
    else:
        assert abs(naive) > 1e-9


def test_root_sum_is_zero_cases():
    assert root_sum_is_zero([1, 1])  # 1 + (-1)
    assert root_sum_is_zero([1, 1, 1])  # cube roots of unity
    assert not root_sum_is_zero([1, 0, 1])
    assert not root_sum_is_zero([2, 1, 1])
    assert root_sum_is_zero([0] * 6)
    assert root_sum_is_zero([1, 0, 1, 1, 0, 1])  # sixth roots: 1+w^2+w^3+w^5 = 0


def naive_poly_sum(chi, b, r):
    q = chi.q
    tot = 0
    for x in range(q):
        f1 = math.prod(x - bi for bi in b[:r]) % q
        f2 = math.prod(x - bi for bi in b[r:]) % q
        if math.gcd(f2, q) != 1:
            continue
        tot += chi(f1 * pow(f2, -1, q) % q) if q > 1 else 1
    return tot


def test_complete_poly_sum_examples():
    chars5 = enumerate_characters(5)
    for c in chars5:
        assert complete_poly_sum(c, (1, 1, 1, 1), 2) == pytest.approx(4)
    quad5 = character_by_index(5, 1, primitive_only=True)
    assert complete_poly_sum(quad5, (1, 1, 2, 2), 2) == pytest.approx(3)
    assert complete_poly_sum(quad5, (1, 2, 3, 4), 2) == pytest.approx(naive_poly_sum(quad5, (1, 2, 3, 4), 2))
    with pytest.raises(ValueError):
        complete_poly_sum(quad5, (1, 2, 3), 2)


def test_complete_poly_sum_against_naive():
    for q in (7, 9, 12, 15, 25, 28):
        for c in enumerate_characters(q, primitive_only=True) or enumerate_characters(q):
            for b in ((1, 2, 3, 4), (1, 1, 2, 3), (2, 5, 5, 1), (1, 2, 3, 4, 5, 6)):
                r = len(b) // 2
                got = complete_poly_sum(c, b, r)
                assert abs(got - naive_poly_sum(c, b, r)) < 1e-8


def test_character_values_lie_on_unit_circle():
    for c in enumerate_characters(77):
        for n in range(1, 77):
            v = c(n)
            if math.gcd(n, 77) == 1:
                assert abs(abs(v) - 1) < 1e-12
                assert cmath.isclose(v ** c.order, 1, abs_tol=1e-9)
            else:
                assert v == 0
