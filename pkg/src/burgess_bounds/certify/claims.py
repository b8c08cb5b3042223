"""Interval certificates for the numerical inequalities behind the Burgess constants.

Each claim is checked by one of three methods:

* ``closed-form``: a single interval evaluation of a parameter-free margin;
* ``subdivision``: dyadic bisection of a real parameter range until every
  piece has a positive interval lower bound;
* ``grid+monotonicity``: the boundary value is enclosed, the derivative in
  the running variable is shown positive on [x0, 10 x0] by subdivision, and
  on [10 x0, inf) by a single interval evaluation.

A margin is the amount by which the favourable side beats the other one, so
pass always means ``margin_lo > 0``.  Nothing here falls back to plain floats.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..reports import FAIL, INCONCLUSIVE, PASS, VerificationReport
from . import interval as iv
from .constants import compute_delta, six_over_pi_sq
from .interval import IntervalReal

OMEGA_CONST = "1.38402"
TAU_CONST = "1.5379"
TAU_CONST_DOUBLE = "3.0758"
INF = "inf"

LN2 = iv.log(2)
LN10 = iv.log(10)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    parameter_domain: str
    method: str


@dataclass
class Outcome:
    status: str
    margin_lo: float | None
    margin_hi: float | None
    params: dict = field(default_factory=dict)
    notes: str = ""


# --- generic certificates -------------------------------------------------------

def bisect_positive(f: Callable[[IntervalReal], IntervalReal], a, b, max_pieces: int = 20000):
    """Certify f > 0 on [a, b] by dyadic subdivision.

    Returns (status, lower bound over pieces, smallest point value seen, pieces).
    A piece whose enclosure is entirely negative at its left end is a failure.
    """
    stack = [(IntervalReal(a).lo, IntervalReal(b).hi)]
    lower = None
    upper = None
    pieces = 0
    while stack:
        x0, x1 = stack.pop()
        pieces += 1
        val = f(IntervalReal(x0, x1))
        if val.lo > 0:
            lower = val.lo if lower is None else min(lower, val.lo)
            pt = f(IntervalReal(x0)).hi
            upper = pt if upper is None else min(upper, pt)
            continue
        left = f(IntervalReal(x0))
        if left.hi < 0:
            return FAIL, left.lo, left.hi, pieces
        if pieces + len(stack) >= max_pieces:
            return INCONCLUSIVE, val.lo, left.hi, pieces
        m = (x0 + x1) / 2
        stack.append((m, x1))
        stack.append((x0, m))
    return PASS, lower, upper, pieces


def monotone_from(f, df, x0, span: int = 10) -> tuple[str, IntervalReal, str]:
    """f(x0) enclosure plus a certificate that df >= 0 on [x0, inf).

    The derivative is bisected on [x0, span*x0]; beyond that one interval
    evaluation with an infinite upper end must have a non-negative lower bound.
    """
    base = f(IntervalReal(x0))
    x1 = IntervalReal(x0) * span
    st, dlo, _, pieces = bisect_positive(df, x0, x1.hi)
    if st != PASS:
        return st, base, f"derivative not certified on [x0, {span} x0] ({pieces} pieces)"
    tail = df(IntervalReal(x1.lo, INF))
    if not tail.lo >= 0:
        return INCONCLUSIVE, base, "derivative tail not certified"
    return PASS, base, f"derivative >= {iv.mp.nstr(dlo, 6)} on [x0, {span} x0], >= 0 beyond"


def _outcome_from_values(status: str, lo, hi, params: dict, notes: str) -> Outcome:
    if status == PASS and not lo > 0:
        status = INCONCLUSIVE
    if status != FAIL and hi is not None and hi < 0:
        status = FAIL
    return Outcome(status, float(lo) if lo is not None else None,
                   float(hi) if hi is not None else None, params, notes)


# --- shared pieces --------------------------------------------------------------

def a_of_r(r: int) -> IntervalReal:
    """Threshold on log log q for the first-variant constant."""
    return 2 * LN2 * (IntervalReal(TAU_CONST_DOUBLE) * r + IntervalReal(OMEGA_CONST) * iv.log(4 * r)
                      - IntervalReal(TAU_CONST))


def _log_fact(r: int) -> IntervalReal:
    return iv.lgamma_int(r)


def _worst(results: list[tuple[str, IntervalReal | None, object]]):
    """Fold per-parameter (status, margin, tag) into the worst one."""
    status = PASS
    worst = None
    for st, m, tag in results:
        if st == FAIL:
            status = FAIL
        elif st == INCONCLUSIVE and status == PASS:
            status = INCONCLUSIVE
        if m is not None and (worst is None or m.lo < worst[0].lo):
            worst = (m, tag)
    return status, worst


# --- the claims -----------------------------------------------------------------

def check_L51(r_max: int = 64) -> Outcome:
    """Exponent of log q in the first-variant lower bound is non-negative past a(r).

    The exponent equals (LL - a(r)) / (2 r LL) identically because the two
    divisor-bound constants satisfy 2 * 1.5379 = 3.0758 exactly, so it vanishes
    at LL = a(r).  The certificate is: enclosure of the boundary value contains
    only numbers of size below 1e-50, the identity holds in exact rationals, and
    the derivative in LL is positive on [a(r), inf).  The reported margin is
    the worst certified derivative lower bound.
    """
    if 2 * Fraction(TAU_CONST) != Fraction(TAU_CONST_DOUBLE):
        return Outcome(FAIL, None, None, {}, "constant identity broken")
    c_om, c_tau = IntervalReal(OMEGA_CONST), IntervalReal(TAU_CONST)
    results = []
    for r in range(2, r_max + 1):
        k = LN2 * (c_om * iv.log(4 * r) + c_tau * (2 * r - 1))

        def g(LL, r=r, k=k):
            return IntervalReal(1) / (2 * r) - k / (r * LL)

        def dg(LL, r=r, k=k):
            return k / (r * LL * LL)

        a = a_of_r(r)
        base = g(a)
        if not (abs(base).hi < IntervalReal("1e-50").lo):
            results.append((FAIL if base.hi < 0 else INCONCLUSIVE, base, r))
            continue
        st, _, _ = monotone_from(g, dg, a.lo)
        # worst derivative value on the certified range [a, 10 a]
        results.append((st, dg(a * 10), r))
    status, worst = _worst(results)
    m, r = worst
    return _outcome_from_values(status, m.lo, m.hi, {"r_range": [2, r_max], "worst_r": r},
                                "boundary value is exactly 0; margin is the derivative lower bound in LL")


def check_L52(r_max: int = 64) -> Outcome:
    """At q = 2^(4r-2) the second-variant B equals the universal lower bound.

    log B2 - log Bmin = (L - (4r-2) log 2) / (2r).  The boundary equality is
    confirmed in exact rationals (both 2r-th powers are rational), and the
    derivative 1/(2r) is positive; that derivative is the reported margin.
    """
    results = []
    for r in range(2, r_max + 1):
        fact = 1
        for k in range(2, r + 1):
            fact *= k
        # B2^(2r) at q = 2^(4r-2) versus Bmin^(2r)
        b2 = Fraction(r) ** (4 * r) * 2 ** (4 * r - 2) * Fraction(r - 1, fact * 2 * r) ** 2
        bmin = Fraction(2) ** (4 * r - 4) * Fraction(r) ** (4 * r) * Fraction(r - 1, r * fact) ** 2
        if b2 != bmin:
            results.append((FAIL, None, r))
            continue
        L0 = (4 * r - 2) * LN2
        lf = _log_fact(r)

        def gap(L, r=r, lf=lf):
            lhs = 2 * iv.log(r) + L / (2 * r) + (iv.log(r - 1) - lf - iv.log(2 * r)) / r
            rhs = (2 - IntervalReal(2) / r) * LN2 + 2 * iv.log(r) + (iv.log(r - 1) - iv.log(r) - lf) / r
            return lhs - rhs

        base = gap(L0)
        if not abs(base).hi < IntervalReal("1e-50").lo:
            results.append((INCONCLUSIVE, base, r))
            continue
        results.append((PASS, IntervalReal(1) / (2 * r), r))
    status, worst = _worst(results)
    m, r = worst
    return _outcome_from_values(status, m.lo, m.hi, {"r_range": [2, r_max], "worst_r": r},
                                "equality at q = 2^(4r-2) checked in exact rationals; margin is d/dlog q")


def check_L53(r_max: int = 64) -> Outcome:
    """log(e/r) - (1/r) log((r-1)/(r! 2r)) > 0; X = 1 is the worst case."""
    results = []
    for r in range(2, r_max + 1):
        m = 1 - iv.log(r) - (iv.log(r - 1) - _log_fact(r) - iv.log(2 * r)) / r
        results.append((PASS if m.lo > 0 else (FAIL if m.hi < 0 else INCONCLUSIVE), m, r))
    status, (m, r) = _worst(results)
    return _outcome_from_values(status, m.lo, m.hi, {"r_range": [2, r_max], "worst_r": r},
                                "log margin at X = 1; larger X only helps")


def _L54a_const() -> IntervalReal:
    return iv.log(IntervalReal(31 * 125) / 36) + 1


def check_L54a(r_hi: int = 1000) -> Outcome:
    """(31 (125e/36) r (2r)^(r/(r-1)))^(4r/(r-1)) <= max(10^32, (25 r)^8) over real r >= 2.

    Subdivision on [2, r_hi] in log form.  For r >= r_hi write u = 1/(r-1); on
    the (25r)^8 branch the margin equals
    8 log 25 - 4(1+u) c - 4(1+u)^2 log 2 - (12u + 4u^2) log(1 + 1/u),
    each term of which decreases in u, so the margin at r_hi bounds the tail.
    """
    c = _L54a_const()
    ln25 = iv.log(25)
    big = 32 * LN10

    def m(r: IntervalReal) -> IntervalReal:
        u = 1 / (r - 1)
        lhs = (4 + 4 * u) * (c + iv.log(r) + (1 + u) * iv.log(2 * r))
        return iv.maximum(big, 8 * (ln25 + iv.log(r))) - lhs

    st, lo, hi, pieces = bisect_positive(m, 2, r_hi)
    u = 1 / (IntervalReal(r_hi) - 1)
    tail = 8 * ln25 - 4 * (1 + u) * c - 4 * (1 + u) ** 2 * LN2 - (12 * u + 4 * u * u) * iv.log(1 + 1 / u)
    if st == PASS and not tail.lo > 0:
        st = INCONCLUSIVE
    lo = min(lo, tail.lo) if lo is not None else None
    return _outcome_from_values(st, lo, hi, {"r_range": [2, r_hi], "pieces": pieces},
                                f"subdivision on [2, {r_hi}]; monotone tail beyond, tail margin "
                                f"{iv.mp.nstr(tail.lo, 6)}")


def check_L54b() -> Outcome:
    """q >= (r (2r)^(r/(r-1)) 2^(1.38402 L/LL) 2 LL (125e/36))^(4r/(r-1)) for L >= 1145 log 10."""
    c1 = IntervalReal(OMEGA_CONST) * LN2
    c0 = LN2 + iv.log(IntervalReal(125) / 36) + 1
    L0 = 1145 * LN10
    results = []
    for r in range(2, 10):
        k = IntervalReal(4 * r) / (r - 1)
        fixed = iv.log(r) + IntervalReal(r) / (r - 1) * iv.log(2 * r) + c0

        def m(L, k=k, fixed=fixed):
            LL = iv.log(L)
            return L - k * (fixed + c1 * L / LL + iv.log(LL))

        def dm(L, k=k):
            LL = iv.log(L)
            return 1 - k * (c1 * (1 / LL - 1 / (LL * LL)) + 1 / (L * LL))

        st, base, note = monotone_from(m, dm, L0.lo)
        if st == PASS and not base.lo > 0:
            st = FAIL if base.hi < 0 else INCONCLUSIVE
        results.append((st, base, r))
    status, (m, r) = _worst(results)
    return _outcome_from_values(status, m.lo, m.hi, {"r_range": [2, 9], "log10_q_min": 1145, "worst_r": r},
                                "boundary enclosure plus derivative sign in log q")


def check_L54c(r_hi: int = 1000) -> Outcome:
    """(r (2r)^(r/(r-1)))^(4r/(r-1)) <= 741 r^8 for real r >= 10.

    With u = 1/(r-1) the log margin is log 741 - 4(1+u)^2 log 2
    - (12u + 4u^2) log(1 + 1/u), decreasing in u, so it increases in r:
    subdivision on [10, r_hi] and the value at r_hi covers the rest.
    """
    ln741 = iv.log(741)

    def m(r: IntervalReal) -> IntervalReal:
        u = 1 / (r - 1)
        return ln741 + 8 * iv.log(r) - (4 + 4 * u) * (iv.log(r) + (1 + u) * iv.log(2 * r))

    st, lo, hi, pieces = bisect_positive(m, 10, r_hi)
    u = 1 / (IntervalReal(r_hi) - 1)
    tail = ln741 - 4 * (1 + u) ** 2 * LN2 - (12 * u + 4 * u * u) * iv.log(1 + 1 / u)
    if st == PASS and not tail.lo > 0:
        st = INCONCLUSIVE
    return _outcome_from_values(st, lo, hi, {"r_range": [10, r_hi], "pieces": pieces},
                                "subdivision plus monotone tail in r")


def check_L54d() -> Outcome:
    """1.38402 log2 L/LL + log 2 + log LL <= L/8 for L >= 1008 log 10."""
    c1 = IntervalReal(OMEGA_CONST) * LN2

    def m(L):
        LL = iv.log(L)
        return L / 8 - c1 * L / LL - LN2 - iv.log(LL)

    def dm(L):
        LL = iv.log(L)
        return IntervalReal(1) / 8 - c1 * (1 / LL - 1 / (LL * LL)) - 1 / (L * LL)

    L0 = 1008 * LN10
    st, base, note = monotone_from(m, dm, L0.lo)
    # enclosure at the exact boundary, not only at its rounded left end
    base = base.hull(m(L0))
    if st == PASS and not base.lo > 0:
        st = FAIL if base.hi < 0 else INCONCLUSIVE
    return _outcome_from_values(st, base.lo, base.hi, {"log10_q_min": 1008}, note)


def check_L54e() -> Outcome:
    """(10r)^18 >= (741 r^8)^(9/4) (125e/36)^10; the r-dependence cancels."""
    m = 18 * LN10 - IntervalReal(9) / 4 * iv.log(741) - 10 * (iv.log(IntervalReal(125) / 36) + 1)
    st = PASS if m.lo > 0 else (FAIL if m.hi < 0 else INCONCLUSIVE)
    return _outcome_from_values(st, m.lo, m.hi, {"r_min": 10}, "log margin independent of r")


def check_L55() -> Outcome:
    """27/(16 L) + 3/8 + 6/pi^2 < 1 for L >= 58 log 10."""
    c = six_over_pi_sq()

    def m(L):
        return 1 - IntervalReal(27) / (16 * L) - IntervalReal(3) / 8 - c

    def dm(L):
        return IntervalReal(27) / (16 * L * L)

    L0 = 58 * LN10
    st, base, note = monotone_from(m, dm, L0.lo)
    base = base.hull(m(L0))
    if st == PASS and not base.lo > 0:
        st = FAIL if base.hi < 0 else INCONCLUSIVE
    return _outcome_from_values(st, base.lo, base.hi, {"log10_q_min": 58}, note)


def check_L55a(A0: int = 31) -> Outcome:
    """delta + (2 log A + 2)/(A-1) <= (3/8) log A for A >= 31.

    The sign of A * d/dA of the margin, 3/8 - 2/(A-1) + A (2 log A + 2)/(A-1)^2,
    is certified instead of the raw derivative; A > 0 so the signs agree.
    """
    delta = compute_delta()

    def m(A):
        LA = iv.log(A)
        return IntervalReal(3) / 8 * LA - delta - (2 * LA + 2) / (A - 1)

    def scaled_dm(A):
        LA = iv.log(A)
        return IntervalReal(3) / 8 - 2 / (A - 1) + A * (2 * LA + 2) / ((A - 1) * (A - 1))

    st, base, note = monotone_from(m, scaled_dm, A0)
    if st == PASS and not base.lo > 0:
        st = FAIL if base.hi < 0 else INCONCLUSIVE
    return _outcome_from_values(st, base.lo, base.hi, {"A_min": A0}, note)


CLAIMS: dict[str, tuple[Claim, Callable[[], Outcome]]] = {
    "L51": (Claim("L51", "log q exponent of the first-variant B lower bound is >= 0",
                  "LL >= a(r), integer r in [2, 64]", "grid+monotonicity"), check_L51),
    "L52": (Claim("L52", "second-variant B reaches the universal lower bound at q = 2^(4r-2)",
                  "log q >= (4r-2) log 2, integer r in [2, 64]", "grid+monotonicity"), check_L52),
    "L53": (Claim("L53", "((r-1)/(r! 2r X))^(1/r) <= e/r", "X >= 1, integer r in [2, 64]", "closed-form"),
            check_L53),
    "L54a": (Claim("L54a", "(31 (125e/36) r (2r)^(r/(r-1)))^(4r/(r-1)) <= max(10^32, (25r)^8)",
                   "real r >= 2", "subdivision"), check_L54a),
    "L54b": (Claim("L54b", "threshold inequality for q at 10^1145", "log q >= 1145 log 10, r in 2..9",
                   "grid+monotonicity"), check_L54b),
    "L54c": (Claim("L54c", "(r (2r)^(r/(r-1)))^(4r/(r-1)) <= 741 r^8", "real r >= 10", "subdivision"),
             check_L54c),
    "L54d": (Claim("L54d", "divisor-bound factor is at most q^(1/8)", "log q >= 1008 log 10",
                   "grid+monotonicity"), check_L54d),
    "L54e": (Claim("L54e", "(10r)^18 >= (741 r^8)^(9/4) (125e/36)^10", "r >= 10", "closed-form"),
             check_L54e),
    "L55": (Claim("L55", "27/(16 log q) + 3/8 + 6/pi^2 < 1", "log q >= 58 log 10", "grid+monotonicity"),
            check_L55),
    "L55a": (Claim("L55a", "delta + (2 log A + 2)/(A-1) <= (3/8) log A", "A >= 31", "grid+monotonicity"),
             check_L55a),
}


def run_claim(claim_id: str) -> VerificationReport:
    claim, fn = CLAIMS[claim_id]
    t0 = time.perf_counter()
    out = fn()
    ms = (time.perf_counter() - t0) * 1000
    params = {"method": claim.method, "domain": claim.parameter_domain, **out.params}
    notes = claim.statement + ("; " + out.notes if out.notes else "")
    rep = VerificationReport(claim_id, "certify", params, out.status, out.margin_lo, out.margin_hi,
                             mode="interval", notes=notes)
    rep.runtime_ms = ms
    return rep


def verify_section5_claims(workers: int = 1, claim_ids: list[str] | None = None) -> list[VerificationReport]:
    """Certify every claim; results are ordered by claim id whatever the worker count."""
    ids = sorted(claim_ids if claim_ids is not None else CLAIMS)
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claim ids {unknown}")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_claim, ids))
    else:
        reports = [run_claim(c) for c in ids]
    return sorted(reports, key=lambda r: r.claim_id)
