"""Evaluation of the explicit Burgess bounds for composite moduli.

All heavy quantities live in log coordinates because the moduli where the
bounds apply have thousands of digits.  Two modes are supported:

* exact: q is given with its factorization, so omega(q), m_r(q) and phi(q)
  are exact;
* surrogate: only log q is given and the divisor-function and q/phi(q)
  bounds stand in for the arithmetic data.

The variant ``theorem1`` uses the constant C(r) with the B that involves the
arithmetic data of q; ``theorem2`` uses the simpler B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from mpmath.ctx_mp import MPContext

from .arithmetic import FactoredInteger, euler_phi, factorize, is_cubefree, m_r_exact, omega

PRECISION_DIGITS = 60

mp = MPContext()
mp.dps = PRECISION_DIGITS

THEOREM1 = "theorem1"
THEOREM2 = "theorem2"
VARIANTS = (THEOREM1, THEOREM2)

OMEGA_CONST = mp.mpf("1.38402")
TAU_CONST = mp.mpf("1.5379")
TAU_CONST_DOUBLE = mp.mpf("3.0758")
PHI_CONST = mp.mpf("2.50637")
LOG10_Q_FLOOR = 1145

SIX_OVER_PI_SQ = 6 / mp.pi**2
DELTA = SIX_OVER_PI_SQ - 36 * mp.zeta(2, derivative=1) / mp.pi**4

# (C(r), D(r)) as printed, r = 2..10; the last row also serves r > 10.
TABLE1 = {
    2: ("15.219", "8.362"),
    3: ("5.359", "4.581"),
    4: ("3.671", "3.396"),
    5: ("2.953", "2.811"),
    6: ("2.549", "2.462"),
    7: ("2.290", "2.229"),
    8: ("2.108", "2.063"),
    9: ("1.973", "1.938"),
    10: ("1.869", "1.841"),
}


@total_ordering
@dataclass(frozen=True)
class LogReal:
    """A real number stored as sign and natural log of its magnitude.

    Products, quotients and real powers act on ``log_magnitude`` only, so
    values such as exp(exp(50)) are represented without overflow.  The
    arithmetic is carried at 60 significant digits.
    """

    sign: int
    log_magnitude: object = None

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if self.sign == 0:
            object.__setattr__(self, "log_magnitude", None)
        elif self.log_magnitude is None:
            raise ValueError("nonzero LogReal needs a log magnitude")
        else:
            object.__setattr__(self, "log_magnitude", mp.mpf(self.log_magnitude))

    @classmethod
    def from_value(cls, x) -> "LogReal":
        if isinstance(x, LogReal):
            return x
        if isinstance(x, Fraction):
            if x == 0:
                return cls(0)
            return cls(1 if x > 0 else -1, mp.log(abs(x.numerator)) - mp.log(x.denominator))
        x = mp.mpf(x) if not isinstance(x, int) else x
        if x == 0:
            return cls(0)
        return cls(1 if x > 0 else -1, mp.log(abs(mp.mpf(x))))

    @classmethod
    def from_log(cls, log_magnitude, sign: int = 1) -> "LogReal":
        return cls(sign, log_magnitude)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def log(self):
        if self.sign != 1:
            raise ValueError("log of a non-positive LogReal")
        return self.log_magnitude

    def log10(self):
        return self.log() / mp.log(10)

    def to_mpf(self):
        if self.sign == 0:
            return mp.mpf(0)
        return self.sign * mp.exp(self.log_magnitude)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_magnitude > 709:
            return self.sign * math.inf
        return float(self.to_mpf())

    def __mul__(self, o) -> "LogReal":
        o = LogReal.from_value(o)
        if self.sign == 0 or o.sign == 0:
            return LogReal(0)
        return LogReal(self.sign * o.sign, self.log_magnitude + o.log_magnitude)

    __rmul__ = __mul__

    def __truediv__(self, o) -> "LogReal":
        o = LogReal.from_value(o)
        if o.sign == 0:
            raise ZeroDivisionError("division by a zero LogReal")
        if self.sign == 0:
            return self
        return LogReal(self.sign * o.sign, self.log_magnitude - o.log_magnitude)

    def __rtruediv__(self, o) -> "LogReal":
        return LogReal.from_value(o) / self

    def __pow__(self, e) -> "LogReal":
        if self.sign == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return self
        if self.sign < 0:
            if isinstance(e, int):
                return LogReal(-1 if e % 2 else 1, self.log_magnitude * e)
            raise ValueError("real power of a negative LogReal")
        return LogReal(1, self.log_magnitude * mp.mpf(e))

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log_magnitude) if self.sign else self

    def __add__(self, o) -> "LogReal":
        o = LogReal.from_value(o)
        if self.sign == 0:
            return o
        if o.sign == 0:
            return self
        big, small = (self, o) if self.log_magnitude >= o.log_magnitude else (o, self)
        ratio = mp.exp(small.log_magnitude - big.log_magnitude)
        if big.sign == small.sign:
            return LogReal(big.sign, big.log_magnitude + mp.log1p(ratio))
        if ratio == 1:
            return LogReal(0)
        return LogReal(big.sign, big.log_magnitude + mp.log1p(-ratio))

    __radd__ = __add__

    def __sub__(self, o) -> "LogReal":
        return self + (-LogReal.from_value(o))

    def _key(self):
        if self.sign == 0:
            return (0, 0)
        return (self.sign, self.sign * self.log_magnitude)

    def __eq__(self, o) -> bool:
        if not isinstance(o, LogReal):
            try:
                o = LogReal.from_value(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self._key() == o._key()

    def __lt__(self, o) -> bool:
        o = LogReal.from_value(o)
        return self._key() < o._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.sign == 0:
            return "LogReal(0)"
        s = "+" if self.sign > 0 else "-"
        return f"LogReal({s}exp({mp.nstr(self.log_magnitude, 15)}))"


# --- closed-form pieces ---------------------------------------------------------

def a_of_r(r: int):
    """log log q threshold of the first variant."""
    _check_r(r)
    return 2 * mp.log(2) * (TAU_CONST_DOUBLE * r + OMEGA_CONST * mp.log(4 * r) - TAU_CONST)


def threshold_log_q(r: int, variant: str) -> LogReal:
    """Smallest admissible log q, returned as a LogReal (its log is log log q)."""
    _check_variant(variant)
    floor = LOG10_Q_FLOOR * mp.log(10)
    if variant == THEOREM1:
        return LogReal(1, max(mp.log(floor), a_of_r(r)))
    return LogReal(1, mp.log(max(floor, (4 * r - 2) * mp.log(2))))


def B_min(r: int):
    """Universal lower bound 2^(2-2/r) r^2 ((1-1/r)/r!)^(1/r) for B above threshold."""
    _check_r(r)
    return mp.power(2, 2 - mp.mpf(2) / r) * r * r * mp.power((1 - mp.mpf(1) / r) / mp.factorial(r), mp.mpf(1) / r)


def kappa(B, r: int):
    """((B-1) B^(1-1/r) / (2r (B+1)^(2-1/r)))^(r/(r-1))."""
    _check_r(r)
    B = mp.mpf(B)
    if not B > 1:
        raise ValueError("kappa needs B > 1")
    base = (B - 1) * mp.power(B, 1 - mp.mpf(1) / r) / (2 * r * mp.power(B + 1, 2 - mp.mpf(1) / r))
    return mp.power(base, mp.mpf(r) / (r - 1))


def _c_prefactor(r: int):
    r_ = mp.mpf(r)
    fact = mp.factorial(r)
    return (mp.power(2, 5 / (2 * r_) - 1 / (2 * r_**2)) * mp.power(3, -1 / (2 * r_))
            * mp.power(fact, -1 / (2 * r_**2)) * mp.power(r_ - 1, 1 / (2 * r_**2) - 1 / (2 * r_))
            * mp.power(r_, 2 / r_ - 1 / (2 * r_**2)))


def C_of_r(r: int):
    """C(r) with B replaced by its universal lower bound B_min(r); unrounded."""
    _check_r(r)
    B = B_min(r)
    k = kappa(B, r)
    denom = (B - 1) / B - 2 * mp.power(k, 1 - mp.mpf(1) / r) / (2 - mp.mpf(1) / r) * mp.power((B + 1) / B, 2 - mp.mpf(1) / r)
    return _c_prefactor(r) * mp.power(k, -1 / (2 * mp.mpf(r))) / denom


def D_of_r(r: int):
    """Limiting constant D(r); unrounded."""
    _check_r(r)
    return _c_prefactor(r) * mp.power(2 * r, 1 / mp.mpf(2 * r - 2)) / (1 - mp.mpf(1) / (2 * r - 1))


def round_up(x, places: int = 3) -> Fraction:
    """Smallest multiple of 10^-places that is >= x."""
    scale = 10**places
    return Fraction(int(mp.ceil(mp.mpf(x) * scale)), scale)


def table_constant(r: int) -> Fraction:
    """C(r) as used in the bound: rounded up, with r > 10 using the r = 10 row."""
    return round_up(C_of_r(min(r, 10)))


def table1(r_values=range(2, 11)) -> list[dict]:
    """Recomputed Table of constants alongside the printed values."""
    rows = []
    for r in r_values:
        c, d = C_of_r(r), D_of_r(r)
        row = {"r": r, "C": c, "D": d, "C_rounded": round_up(c), "D_rounded": round_up(d)}
        if r in TABLE1:
            row["C_printed"] = Fraction(TABLE1[r][0])
            row["D_printed"] = Fraction(TABLE1[r][1])
        rows.append(row)
    return rows


def _check_r(r):
    if not isinstance(r, int) or isinstance(r, bool) or r < 2:
        raise ValueError(f"r must be an integer >= 2, got {r!r}")


def _check_variant(v):
    if v not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {v!r}")


# --- context --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundContext:
    """Everything about (q, r, variant) that does not depend on N.

    Build with :func:`make_context`.  ``log_structure`` is log((4r)^omega m_r)
    and ``log_q_over_phi`` is log(q/phi(q)); in surrogate mode both are upper
    bounds, and ``phi_star`` and ``omega`` are the matching one-sided bounds.
    """

    r: int
    variant: str
    surrogate_mode: bool
    log_q: object
    q_exact: FactoredInteger | None
    C: object
    omega: object
    log_m_r: object
    log_structure: object
    log_q_over_phi: object
    phi_star: object
    a_r: object
    threshold: LogReal
    B: object
    kappa: object
    beta: object
    f: object
    log_T: object
    notes: tuple = field(default_factory=tuple)

    @property
    def mode(self) -> str:
        return "surrogate" if self.surrogate_mode else "exact"

    @property
    def T(self) -> LogReal:
        return LogReal(1, self.log_T)

    def A_for(self, N):
        """A = kappa N / B for an integer N or a LogReal N."""
        return self.kappa * _n_value(N) / self.B


def _n_value(N):
    if isinstance(N, LogReal):
        return N.to_mpf()
    return mp.mpf(N)


def make_context(r: int, q: int | FactoredInteger | None = None, log_q=None, variant: str = THEOREM2,
                 surrogate: bool | None = None, C=None) -> BoundContext:
    """Assemble a :class:`BoundContext`.

    Give ``q`` (an int or a FactoredInteger) for exact mode, or ``log_q`` for
    surrogate mode.  ``surrogate=True`` with an exact q uses only log q.
    """
    _check_r(r)
    _check_variant(variant)
    if q is None and log_q is None:
        raise ValueError("give q or log_q")
    if q is not None:
        fq = q if isinstance(q, FactoredInteger) else factorize(q)
        if int(fq) < 2:
            raise ValueError("q must be at least 2")
        L = mp.log(int(fq)) if int(fq).bit_length() < 4000 else _log_big(fq)
        if log_q is not None and abs(mp.mpf(log_q) - L) > mp.mpf(10) ** (-40) * L:
            raise ValueError("log_q disagrees with q")
    else:
        fq = None
        L = mp.mpf(log_q)
        if not L > 1:
            raise ValueError("log_q must exceed 1")
    surrogate = fq is None if surrogate is None else surrogate
    if not surrogate and fq is None:
        raise ValueError("exact mode needs q with its factorization")
    notes = []
    LL = mp.log(L)
    if surrogate:
        if not LL > 0:
            raise ValueError("surrogate mode needs log log q > 0")
        om = OMEGA_CONST * L / LL
        log_tau = TAU_CONST * L / LL * mp.log(2)
        log_m = min((2 * r - 1) * (log_tau - mp.log(2)), L - mp.log(2 * r))
        log_qphi = mp.log(mp.exp(mp.euler) * LL + PHI_CONST / LL)
        phi_star = 1 / mp.exp(log_qphi)
        if r >= 3:
            notes.append("cubefree assumed")
        fq_used = None
    else:
        om = omega(fq)
        log_m = _log_frac(m_r_exact(fq, r))
        phi = euler_phi(fq)
        phi_star = Fraction(phi, int(fq))
        log_qphi = _log_frac(1 / phi_star)
        fq_used = fq
    log_struct = om * mp.log(4 * r) + log_m
    C = mp.mpf(table_constant(r).numerator) / table_constant(r).denominator if C is None else mp.mpf(C)
    if r > 10:
        notes.append("C(r) for r > 10 taken from the r = 10 row")

    base_log = 2 * mp.log(r) + L / (2 * r) + (mp.log(r - 1) - mp.log(mp.factorial(r)) - mp.log(2 * r)) / r
    if variant == THEOREM1:
        log_B = base_log - log_struct / r
        f = mp.mpf(r)
        log_T = (mp.mpf(1) / (2 * r) - mp.mpf(1) / (2 * r * r)) * log_struct + log_qphi / r
    else:
        log_B = base_log
        f = mp.exp(log_struct) * (r - 1) + 1
        log_T = log_struct / (2 * r) + log_qphi / r
    B = mp.exp(log_B)
    if log_B > 1 + mp.log(r) + L / (2 * r):
        raise RuntimeError("B exceeds e r q^(1/(2r))")
    thr = threshold_log_q(r, variant)
    if L >= thr.to_mpf() and log_B < mp.log(B_min(r)) - mp.mpf(10) ** -40:
        if not surrogate:
            raise RuntimeError("B below its universal lower bound above threshold")
        # the omega surrogate is too weak to reach the lower bound near the first-variant threshold
        notes.append("surrogate B below universal lower bound")
    k = kappa(B, r) if B > 1 else None
    beta = mp.exp(log_B - 2 * mp.log(r) - L / (2 * r))
    return BoundContext(r=r, variant=variant, surrogate_mode=surrogate, log_q=L, q_exact=fq_used or fq,
                        C=C, omega=om, log_m_r=log_m, log_structure=log_struct, log_q_over_phi=log_qphi,
                        phi_star=phi_star, a_r=a_of_r(r), threshold=thr, B=B, kappa=k, beta=beta, f=f,
                        log_T=log_T, notes=tuple(notes))


def _log_frac(x: Fraction):
    return _log_int(x.numerator) - _log_int(x.denominator)


def _log_int(n: int):
    if n.bit_length() < 4000:
        return mp.log(n)
    shift = n.bit_length() - 200
    return mp.log(n >> shift) + shift * mp.log(2)


def _log_big(fq: FactoredInteger):
    return mp.fsum(e * mp.log(p) for p, e in fq.factors)


def B_candidate(ctx: BoundContext):
    return ctx.B


def T_factor(ctx: BoundContext) -> LogReal:
    return ctx.T


# --- the bound ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundEvaluation:
    bound: LogReal
    applicable: bool
    reasons: tuple
    notes: tuple
    log_N: object


def _log_N(ctx: BoundContext, N=None, theta=None):
    if (N is None) == (theta is None):
        raise ValueError("give exactly one of N and theta")
    if theta is not None:
        return mp.mpf(theta) * ctx.log_q
    if isinstance(N, LogReal):
        if N.sign != 1 or N.log_magnitude < 0:
            raise ValueError("N must be at least 1")
        return N.log_magnitude
    if N < 1:
        raise ValueError("N must be at least 1")
    return _log_int(int(N)) if isinstance(N, int) else mp.log(N)


def applicability(ctx: BoundContext) -> tuple[bool, list[str]]:
    reasons = []
    L = ctx.log_q
    if L < LOG10_Q_FLOOR * mp.log(10):
        reasons.append(f"below 10^{LOG10_Q_FLOOR} threshold")
    if ctx.variant == THEOREM1 and mp.log(L) < ctx.a_r:
        reasons.append("below e^(e^a(r)) threshold")
    if ctx.variant == THEOREM2 and L < (4 * ctx.r - 2) * mp.log(2):
        reasons.append("below 2^(4r-2) threshold")
    if ctx.r >= 3 and ctx.q_exact is not None and not is_cubefree(ctx.q_exact):
        reasons.append("q not cubefree")
    return not reasons, reasons


def log_bound(ctx: BoundContext, log_N):
    """log of C N^(1-1/r) q^((r+1)/(4r^2)) (log q)^(1/(2r)) T."""
    r = ctx.r
    return (mp.log(ctx.C) + (1 - mp.mpf(1) / r) * log_N + mp.mpf(r + 1) / (4 * r * r) * ctx.log_q
            + mp.log(ctx.log_q) / (2 * r) + ctx.log_T)


def evaluate_bound(ctx: BoundContext, N=None, theta=None) -> BoundEvaluation:
    """The bound for |sum_{M<n<=M+N} chi(n)|, N given exactly or as q^theta."""
    lN = _log_N(ctx, N, theta)
    ok, reasons = applicability(ctx)
    notes = list(ctx.notes)
    r, L = ctx.r, ctx.log_q
    if lN <= (mp.mpf(1) / 4 + mp.mpf(1) / (4 * r)) * L:
        notes.append("N <= q^(1/4+1/(4r)): trivial regime")
    if lN > mp.mpf(2) / 3 * L:
        notes.append("N > q^(2/3): Polya-Vinogradov is stronger here (not evaluated)")
    return BoundEvaluation(LogReal(1, log_bound(ctx, lN)), ok, tuple(reasons), tuple(notes), lN)


def direct_bound(ctx: BoundContext, N=None, theta=None):
    """Same closed form multiplied out in linear high precision.

    Used as the second path of a dual evaluation: the arithmetic data are
    rebuilt from q (or log q) rather than taken from the context's logs.
    mpmath floats have an unbounded exponent, so q near 10^5000 is fine.
    """
    r, L = ctx.r, ctx.log_q
    q = mp.mpf(int(ctx.q_exact)) if (ctx.q_exact is not None and not ctx.surrogate_mode
                                     and int(ctx.q_exact).bit_length() < 4000) else mp.exp(L)
    if theta is not None:
        Nv = mp.power(q, theta)
    elif isinstance(N, LogReal):
        Nv = N.to_mpf()
    else:
        Nv = mp.mpf(N)
    if ctx.surrogate_mode:
        LL = mp.log(L)
        om = OMEGA_CONST * L / LL
        tau = mp.power(2, TAU_CONST * L / LL)
        m = min(mp.power(tau / 2, 2 * r - 1), q / (2 * r))
        qphi = mp.exp(mp.euler) * LL + PHI_CONST / LL
    else:
        om = omega(ctx.q_exact)
        mr = m_r_exact(ctx.q_exact, r)
        m = mp.mpf(mr.numerator) / mr.denominator
        qphi = q / euler_phi(ctx.q_exact)
    struct = mp.power(4 * r, om) * m
    e = (mp.mpf(1) / (2 * r) - mp.mpf(1) / (2 * r * r)) if ctx.variant == THEOREM1 else mp.mpf(1) / (2 * r)
    T = mp.power(struct, e) * mp.power(qphi, mp.mpf(1) / r)
    return (ctx.C * mp.power(Nv, 1 - mp.mpf(1) / r) * mp.power(q, mp.mpf(r + 1) / (4 * r * r))
            * mp.power(L, mp.mpf(1) / (2 * r)) * T)


def dual_path_discrepancy(ctx: BoundContext, N=None, theta=None):
    """|log b1 - log b2| / |log b2| between the log-domain and direct evaluations."""
    b1 = evaluate_bound(ctx, N=N, theta=theta).bound.log()
    b2 = mp.log(direct_bound(ctx, N=N, theta=theta))
    return abs(b1 - b2) / abs(b2)


# --- intermediate quantities ------------------------------------------------------

@dataclass(frozen=True)
class BurgessIntermediates:
    u: object
    w: object
    s: object
    alpha: object
    P: LogReal
    Q: LogReal
    A: object
    count_A: object
    count_exact: bool
    alpha_bound_checked: bool
    alpha_bound_holds: bool | None


def _count_coprime(fq: FactoredInteger, A) -> int:
    """#{1 <= a <= A : gcd(a, q) = 1} by inclusion-exclusion over the primes of q."""
    primes = [p for p, _ in fq.factors]
    n = int(mp.floor(A))
    total = 0
    stack = [(0, 1, 1)]
    while stack:
        i, d, mu = stack.pop()
        if i == len(primes):
            total += mu * (n // d)
            continue
        stack.append((i + 1, d, mu))
        stack.append((i + 1, d * primes[i], -mu))
    return total


def intermediates(ctx: BoundContext, N=None, A=None, B=None, theta=None, C=None) -> BurgessIntermediates:
    """u, w, s, alpha, P and Q for the given N, with A and B defaulting to the context's choice."""
    r, L = ctx.r, ctx.log_q
    Nv = mp.exp(_log_N(ctx, N, theta))
    B = ctx.B if B is None else mp.mpf(B)
    k = kappa(B, r)
    A = k * Nv / B if A is None else mp.mpf(A)
    if abs(A * B - k * Nv) > mp.mpf("1e-6") * k * Nv:
        raise ValueError("A * B must equal kappa * N (relative deviation above 1e-6)")
    if not A > 1:
        raise ValueError("A must exceed 1")
    C = ctx.C if C is None else mp.mpf(C)
    phi_star = ctx.phi_star if not isinstance(ctx.phi_star, Fraction) else \
        mp.mpf(ctx.phi_star.numerator) / ctx.phi_star.denominator
    two_om1 = mp.power(2, mp.mpf(ctx.omega) - 1)
    exact_count = ctx.q_exact is not None and not ctx.surrogate_mode and len(ctx.q_exact.factors) <= 16
    if exact_count:
        count = mp.mpf(_count_coprime(ctx.q_exact, A))
    else:
        count = max(A * phi_star - two_om1, mp.mpf(1))
    q_pow = lambda e: mp.exp(e * L)  # noqa: E731
    lnA = mp.log(A)
    bracket = SIX_OVER_PI_SQ * lnA + DELTA + (2 * lnA + 2) / (A - 1)
    s = 2 * C * mp.power(k, 1 - mp.mpf(1) / r) / (2 - mp.mpf(1) / r) * mp.power((B + 1) / B, 2 - mp.mpf(1) / r)
    u = mp.power(Nv / count, mp.mpf(1) / r) / q_pow(mp.mpf(1) / (2 * r * r))
    beta = B / (r * r * q_pow(mp.mpf(1) / (2 * r)))
    w = ctx.f / (r * r * mp.power(beta, r + 1) * mp.factorial(r) * L)
    alpha = (k * phi_star + B * two_om1 / Nv) ** 2 / B + 2 * k * bracket
    P = (k * Nv * phi_star / B + two_om1) ** 2 + 2 * k * Nv * Nv / B * bracket
    m = mp.exp(ctx.log_m_r)
    Q = (2 * r * mp.power(4 * r, ctx.omega) * mp.power(B, 2 * r) * m * q_pow(mp.mpf(1) / 2)
         + mp.power(r, 2 * r) / mp.factorial(r) * mp.power(B, r) * q_pow(1))
    lN = mp.log(Nv)
    checked = (L >= max(LOG10_Q_FLOOR * mp.log(10), 18 * mp.log(10 * r), ctx.threshold.to_mpf())
               and (mp.mpf(1) / 4 + mp.mpf(1) / (4 * r)) * L <= lN <= mp.mpf(2) / 3 * L)
    holds = bool(alpha <= mp.mpf(4) / 3 * k * L) if checked else None
    return BurgessIntermediates(u=u, w=w, s=s, alpha=alpha, P=LogReal.from_value(P), Q=LogReal.from_value(Q),
                                A=A, count_A=count, count_exact=exact_count, alpha_bound_checked=checked,
                                alpha_bound_holds=holds)


# --- small-q exploration ------------------------------------------------------------

def explore_ratio(chi, M: int, N: int, r: int, variant: str = THEOREM2) -> dict:
    """|S_chi(M, N)| divided by the bound formula at a small modulus.

    The bound is far outside its range of validity here, so the ratio is
    informational only.
    """
    from .characters import char_sum, char_sum_exact_counts, root_sum_is_zero

    ctx = make_context(r, q=chi.modulus, variant=variant)
    ev = evaluate_bound(ctx, N=N)
    s = 0.0 if root_sum_is_zero(char_sum_exact_counts(chi, M, N)) else abs(char_sum(chi, M, N))
    return {"q": chi.modulus, "r": r, "M": M, "N": N, "variant": variant, "abs_sum": s,
            "bound": float(ev.bound), "ratio": s / float(ev.bound), "applicable": ev.applicable}
