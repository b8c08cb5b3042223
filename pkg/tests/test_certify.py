import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from burgess_bounds.certify import (
    CLAIMS,
    IntervalReal,
    compute_delta,
    verify_mobius_lemma,
    verify_phi_sum_lemma,
    verify_section5_claims,
    verify_vA_lemmas,
    zeta_prime_2,
)
from burgess_bounds.certify import interval as iv
from burgess_bounds.certify.claims import bisect_positive, monotone_from
from burgess_bounds.certify.constants import six_over_pi_sq
from burgess_bounds.certify.mean_values import (
    a_set,
    mobius_sieve,
    pair_count_rhs,
    phi_sieve,
    phi_sum_rhs,
    sample_instance,
    square_sum_rhs,
    v_A_counts,
)

PI_80 = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986"
E_80 = "2.7182818284590452353602874713526624977572470936999595749669676277240766303535475945"
GAMMA_80 = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467"


def inside(x, point) -> bool:
    with mpmath.workdps(80):
        return mpmath.mpf(x.lo) <= point <= mpmath.mpf(x.hi)


# --- independent oracles ---------------------------------------------------------------

def zeta_prime_2_euler_maclaurin(N=1000):
    """-sum log(n)/n^2 with an Euler-Maclaurin tail; the remainder is below 1e-25 at N = 1000."""
    with mpmath.workdps(50):
        lg = mpmath.log(N)
        head = mpmath.fsum(mpmath.log(n) / n**2 for n in range(2, N))
        f = lg / N**2
        f1 = (1 - 2 * lg) / N**3
        f3 = (26 - 24 * lg) / N**5
        tail = (lg + 1) / N + f / 2 - f1 / 12 + f3 / 720
        return -(head + tail)


def mobius_brute(n):
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


# --- interval arithmetic -----------------------------------------------------------------

def test_interval_examples():
    s = IntervalReal(1) + IntervalReal(2)
    assert s.contains(3) and s.width <= 2 * mpmath.mpf(2) ** (-190)
    assert iv.pi().width < mpmath.mpf(10) ** -50
    with mpmath.workdps(80):
        assert inside(iv.pi(), mpmath.mpf(PI_80))
        assert inside(iv.e(), mpmath.mpf(E_80))
        assert inside(iv.exp(1), mpmath.mpf(E_80))
        assert inside(iv.euler_gamma(), mpmath.mpf(GAMMA_80))


def test_decimal_strings_are_enclosed_exactly():
    x = IntervalReal("1.38402")
    assert x.contains(Fraction(138402, 100000))
    assert x.width < mpmath.mpf(10) ** -55
    assert IntervalReal(Fraction(1, 3)).contains(Fraction(1, 3))


def test_interval_domain_errors():
    with pytest.raises(ZeroDivisionError):
        IntervalReal(1) / IntervalReal(-1, 1)
    with pytest.raises(ZeroDivisionError):
        1 / IntervalReal(0, 2)
    with pytest.raises(ValueError):
        iv.log(IntervalReal(0, 1))
    with pytest.raises(ValueError):
        iv.sqrt(IntervalReal(-1, 1))
    with pytest.raises(ValueError):
        IntervalReal(-2, 3) ** 0.5
    with pytest.raises(ValueError):
        IntervalReal(2, 1)
    with pytest.raises(TypeError):
        IntervalReal(True)


def test_abs_hull_min_max():
    x = IntervalReal(-2, 1)
    assert abs(x).lo == 0 and abs(x).hi == 2
    assert abs(IntervalReal(-3, -1)).lo == 1
    h = IntervalReal(1, 2).hull(IntervalReal(5, 6))
    assert (h.lo, h.hi) == (1, 6)
    m = iv.maximum(IntervalReal(1, 4), IntervalReal(2, 3))
    assert (m.lo, m.hi) == (2, 4)
    n = iv.minimum(IntervalReal(1, 4), IntervalReal(2, 3))
    assert (n.lo, n.hi) == (1, 3)
    assert iv.lgamma_int(10).contains(iv.log(3628800))
    assert iv.lgamma_int(0).contains(0)


def _random_decimal(rng, lo, hi):
    return f"{rng.uniform(lo, hi):.15f}"


def test_containment_regression_against_80_digit_points():
    """10^4 random operations; a point from each input must map inside the output."""
    rng = random.Random(2024)
    ops = ["add", "sub", "mul", "div", "exp", "log", "sqrt", "pow", "rpow"]
    for _ in range(10**4):
        op = rng.choice(ops)
        pos = op in ("log", "sqrt", "pow", "div", "rpow")
        a_lo = _random_decimal(rng, 0.01 if pos else -50, 50)
        b_lo = _random_decimal(rng, 0.01, 20)
        wa, wb = 10.0 ** rng.randint(-40, -1), 10.0 ** rng.randint(-40, -1)
        with mpmath.workdps(80):
            a0, b0 = mpmath.mpf(a_lo), mpmath.mpf(b_lo)
            a1, b1 = a0 + wa, b0 + wb
            ta, tb = mpmath.mpf(rng.random()), mpmath.mpf(rng.random())
            pa, pb = a0 + ta * (a1 - a0), b0 + tb * (b1 - b0)
        A = IntervalReal(a_lo, mpmath.nstr(a1, 70))
        B = IntervalReal(b_lo, mpmath.nstr(b1, 70))
        with mpmath.workdps(80):
            # the string endpoints above round inward at most one ulp at 70 digits; stay inside
            pa = min(max(pa, mpmath.mpf(A.lo)), mpmath.mpf(A.hi))
            pb = min(max(pb, mpmath.mpf(B.lo)), mpmath.mpf(B.hi))
            if op == "add":
                out, pt = A + B, pa + pb
            elif op == "sub":
                out, pt = A - B, pa - pb
            elif op == "mul":
                out, pt = A * B, pa * pb
            elif op == "div":
                out, pt = A / B, pa / pb
            elif op == "exp":
                out, pt = iv.exp(A / 10), mpmath.exp(pa / 10)
            elif op == "log":
                out, pt = iv.log(A), mpmath.log(pa)
            elif op == "sqrt":
                out, pt = iv.sqrt(A), mpmath.sqrt(pa)
            elif op == "pow":
                out, pt = A ** (B / 10), pa ** (pb / 10)
            else:
                out, pt = A ** 3, pa**3
            assert inside(out, pt), (op, a_lo, b_lo)


# --- constants --------------------------------------------------------------------

def test_zeta_prime_2_enclosure():
    z = zeta_prime_2()
    em = zeta_prime_2_euler_maclaurin()
    assert inside(z, em)
    assert inside(z, mpmath.zeta(2, derivative=1))
    assert float(em) == pytest.approx(-0.9375482543, abs=1e-10)
    assert z.width < 1e-8


def test_zeta_prime_2_short_sum_still_encloses():
    z = zeta_prime_2(200)
    assert inside(z, zeta_prime_2_euler_maclaurin())
    with pytest.raises(ValueError):
        zeta_prime_2(1)


def test_six_over_pi_sq():
    with mpmath.workdps(80):
        assert inside(six_over_pi_sq(), 6 / mpmath.mpf(PI_80) ** 2)
    assert float(six_over_pi_sq()) == pytest.approx(0.6079271018, abs=1e-10)


def test_delta():
    d = compute_delta()
    assert d.width < 1e-8
    assert IntervalReal("0.954417", "0.954427").contains(d)
    with mpmath.workdps(60):
        ref = 6 / mpmath.pi**2 - 36 * zeta_prime_2_euler_maclaurin() / mpmath.pi**4
    assert inside(d, ref)


# --- Mobius and totient partial sums ---------------------------------------------------------

def test_sieves_match_brute_force():
    mu = mobius_sieve(500)
    phi = phi_sieve(500)
    for n in range(1, 501):
        assert mu[n] == mobius_brute(n)
        assert phi[n] == sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def test_mobius_partial_sum_examples():
    s2 = sum(Fraction(mobius_brute(d), d * d) for d in range(1, 3))
    assert s2 == Fraction(3, 4)
    assert abs(0.75 - 6 / math.pi**2) == pytest.approx(0.1421, abs=1e-4)
    s10 = sum(Fraction(mobius_brute(d), d * d) for d in range(1, 11))
    assert float(s10) == pytest.approx(0.616259, abs=1e-6)
    assert abs(float(s10) - 6 / math.pi**2) == pytest.approx(0.00833, abs=1e-5)
    for N in (2, 10):
        assert all(r.status == "pass" for r in verify_mobius_lemma(N))
    with pytest.raises(ValueError):
        verify_mobius_lemma(1)


def test_phi_sum_examples():
    left10 = sum(Fraction(sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1), n * n) for n in range(1, 11))
    assert float(left10) == pytest.approx(2.1118, abs=1e-4)
    right10 = phi_sum_rhs(10)
    assert float(right10) == pytest.approx(3.088, abs=1e-3)
    assert right10.lo > IntervalReal(left10).hi
    assert phi_sum_rhs(2).lo > IntervalReal(Fraction(5, 4)).hi
    assert all(r.status == "pass" for r in verify_phi_sum_lemma(10))


def test_sweeps_to_ten_thousand():
    reps = verify_mobius_lemma(10**4) + verify_phi_sum_lemma(10**4)
    assert [r.claim_id for r in reps] == ["mobius_sum", "mobius_log_sum", "phi_sum"]
    assert all(r.status == "pass" and r.margin_lo > 0 for r in reps)


# --- v_A counts ---------------------------------------------------------------------------

def naive_v(q, A, M, N):
    v = [0] * q
    for a in range(1, math.floor(A) + 1):
        if math.gcd(a, q) != 1:
            continue
        for n in range(M + 1, M + N + 1):
            for x in range(q):
                if (a * x - n) % q == 0:
                    v[x] += 1
    return v


def test_vA_examples():
    assert a_set(12, 5) == [1, 5]
    v = v_A_counts(12, 5, 0, 12)
    assert int(v.sum()) == 24
    assert list(v) == naive_v(12, 5, 0, 12)
    v5 = v_A_counts(5, 2, 0, 5)
    assert square_sum_rhs(5, Fraction(2), 5, compute_delta()).lo > int((v5 * v5).sum())
    assert a_set(10, Fraction(201, 100)) == [1]
    assert int(v_A_counts(10, Fraction(201, 100), 7, 9).sum()) == 9


def test_vA_matches_naive_and_bounds():
    rng = random.Random(5)
    for _ in range(40):
        q = rng.randint(2, 60)
        A = Fraction(rng.randint(200, 1500), 100)
        N = rng.randint(1, 40)
        M = rng.randint(-500, 500)
        v = v_A_counts(q, A, M, N)
        assert list(v) == naive_v(q, A, M, N)
        if A * N < q:
            sq = int((v * v).sum())
            assert sq <= pair_count_rhs(q, A, N)


def test_sampler_respects_ranges():
    rng = random.Random(0)
    for _ in range(500):
        q, A, M, N = sample_instance(rng)
        assert 2 <= q <= 10**4 and 2 <= A <= 50 and 1 <= N <= 1000 and A * N < q
        assert abs(M) <= 10**6


def test_vA_lemmas_reports():
    reps = verify_vA_lemmas(150, seed=9)
    assert [r.claim_id for r in reps] == ["vA_sum", "vA_square_sum_pairs", "vA_square_sum_delta"]
    assert all(r.status == "pass" and r.seed == 9 for r in reps)
    again = verify_vA_lemmas(150, seed=9)
    assert [r.to_dict() for r in reps] == [r.to_dict() for r in again]


# --- certificates -------------------------------------------------------------------------

def test_bisect_and_monotone_helpers():
    status, lower, _, pieces = bisect_positive(lambda x: (x - 1) ** 2 + IntervalReal("0.01"), 0, 3)
    assert status == "pass" and lower > 0 and pieces >= 1
    status, _, _, _ = bisect_positive(lambda x: x - 1, 0, 3, max_pieces=200)
    assert status != "pass"
    f = lambda x: iv.log(x) - 1  # noqa: E731
    df = lambda x: 1 / x  # noqa: E731
    status, base, _ = monotone_from(f, df, 3)
    assert status == "pass" and base.lo > 0
    status, _, _ = monotone_from(f, lambda x: 1 - x, 3)
    assert status != "pass"


def test_claim_table():
    assert set(CLAIMS) >= {"L51", "L52", "L53", "L54a", "L54b", "L54c", "L54d", "L54e", "L55"}
    assert len(CLAIMS) == 10
    for cid, (claim, _) in CLAIMS.items():
        assert claim.claim_id == cid
        assert claim.method in {"grid+monotonicity", "subdivision", "closed-form"}


def test_L55_boundary_value_by_hand():
    L = 58 * math.log(10)
    margin = 1 - (27 / (16 * L) + 3 / 8 + 6 / math.pi**2)
    assert margin == pytest.approx(0.00443, abs=1e-5)


def test_L54d_boundary_value_by_hand():
    L = 1008 * math.log(10)
    LL = math.log(L)
    left = 1.38402 * math.log(2) * L / LL + math.log(2) + math.log(LL)
    assert LL == pytest.approx(7.750, abs=1e-3)
    assert 0 < L / 8 - left < 0.5


@pytest.fixture(scope="module")
def claim_reports():
    return verify_section5_claims()


def test_all_claims_certified(claim_reports):
    ids = [r.claim_id for r in claim_reports]
    assert ids == sorted(CLAIMS)
    for r in claim_reports:
        assert r.status == "pass", r.claim_id
        assert r.margin_lo > 0 and r.margin_hi >= r.margin_lo
        assert r.notes


def test_claim_margins_match_hand_values(claim_reports):
    by_id = {r.claim_id: r for r in claim_reports}
    assert by_id["L55"].margin_lo == pytest.approx(0.00443, abs=1e-5)
    assert by_id["L54d"].margin_lo < 0.5


def _without_runtime(reports):
    out = []
    for r in reports:
        d = r.to_dict()
        d.pop("runtime_ms")
        out.append(d)
    return out


def test_claims_deterministic_across_workers(claim_reports):
    subset = ["L53", "L54e", "L55"]
    a = _without_runtime(verify_section5_claims(workers=1, claim_ids=subset))
    b = _without_runtime(verify_section5_claims(workers=2, claim_ids=subset))
    assert a == b
    assert a == _without_runtime(r for r in claim_reports if r.claim_id in subset)
