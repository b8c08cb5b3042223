"""Outward-rounded interval arithmetic at 60 significant digits.

A thin immutable wrapper over mpmath's interval context.  mpmath rounds every
endpoint outward, so each result contains the exact image of the inputs.  A
private context is used so the global ``mpmath.iv`` precision is untouched.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Real
from typing import Union

from mpmath.ctx_iv import MPIntervalContext
from mpmath.ctx_mp import MPContext

PRECISION_DIGITS = 60

ctx = MPIntervalContext()
ctx.dps = PRECISION_DIGITS
# Point context for endpoints; same binary precision as the interval context.
mp = MPContext()
mp.prec = ctx.prec


def _ends(v):
    lo, hi = v._mpi_
    return mp.make_mpf(lo), mp.make_mpf(hi)


def _from_ends(lo, hi):
    return ctx.mpf([lo, hi])


Number = Union["IntervalReal", int, float, str, Fraction]


def _to_ivmpf(x):
    if isinstance(x, IntervalReal):
        return x._v
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    if isinstance(x, bool):
        raise TypeError("bool is not an interval operand")
    if isinstance(x, (int, str)):
        return ctx.mpf(x)
    if isinstance(x, float):
        return ctx.mpf(x)
    if isinstance(x, tuple) and len(x) == 2:
        return ctx.mpf([x[0], x[1]])
    if isinstance(x, Real):
        return ctx.mpf(str(x))
    return ctx.convert(x)


class IntervalReal:
    """Closed interval [lo, hi] with outward rounding.

    Decimal strings such as ``"1.38402"`` are enclosed exactly as written,
    so constants quoted in decimal carry no hidden float rounding.
    """

    __slots__ = ("_v",)

    def __init__(self, value: Number | tuple, hi: Number | None = None):
        if hi is not None:
            lo_end, hi_end = _ends(_to_ivmpf(value))[0], _ends(_to_ivmpf(hi))[1]
            if lo_end > hi_end:
                raise ValueError("interval lower end exceeds upper end")
            self._v = _from_ends(lo_end, hi_end)
        else:
            self._v = _to_ivmpf(value)

    @classmethod
    def _wrap(cls, v) -> "IntervalReal":
        out = cls.__new__(cls)
        out._v = v
        return out

    # --- endpoints -------------------------------------------------------------
    @property
    def lo(self):
        return _ends(self._v)[0]

    @property
    def hi(self):
        return _ends(self._v)[1]

    @property
    def width(self):
        lo, hi = _ends(self._v)
        return mp.fsub(hi, lo, rounding="u")

    @property
    def mid(self):
        lo, hi = _ends(self._v)
        return (lo + hi) / 2

    def contains(self, x) -> bool:
        lo, hi = _ends(self._v)
        xlo, xhi = _ends(_to_ivmpf(x))
        return lo <= xlo and xhi <= hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def is_positive(self) -> bool:
        return self.lo > 0

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self):
        return f"IntervalReal([{mp.nstr(self.lo, 20)}, {mp.nstr(self.hi, 20)}])"

    # --- arithmetic ------------------------------------------------------------
    def __add__(self, o):
        return IntervalReal._wrap(self._v + _to_ivmpf(o))

    __radd__ = __add__

    def __sub__(self, o):
        return IntervalReal._wrap(self._v - _to_ivmpf(o))

    def __rsub__(self, o):
        return IntervalReal._wrap(_to_ivmpf(o) - self._v)

    def __mul__(self, o):
        return IntervalReal._wrap(self._v * _to_ivmpf(o))

    __rmul__ = __mul__

    def __truediv__(self, o):
        d = _to_ivmpf(o)
        if _straddles_zero(d):
            raise ZeroDivisionError("interval division by an interval containing 0")
        return IntervalReal._wrap(self._v / d)

    def __rtruediv__(self, o):
        if _straddles_zero(self._v):
            raise ZeroDivisionError("interval division by an interval containing 0")
        return IntervalReal._wrap(_to_ivmpf(o) / self._v)

    def __neg__(self):
        return IntervalReal._wrap(-self._v)

    def __pow__(self, o):
        if isinstance(o, int) and not isinstance(o, bool):
            return IntervalReal._wrap(self._v ** o)
        e = _to_ivmpf(o)
        if self.lo <= 0:
            raise ValueError("non-integer power needs a strictly positive base")
        return IntervalReal._wrap(ctx.exp(e * ctx.log(self._v)))

    def __rpow__(self, o):
        return IntervalReal(o) ** self

    def __abs__(self):
        a, b = _ends(self._v)
        if a >= 0:
            return self
        if b <= 0:
            return -self
        return IntervalReal._wrap(_from_ends(0, max(-a, b)))

    def hull(self, o: "IntervalReal") -> "IntervalReal":
        a, b = _ends(self._v)
        c, d = _ends(_to_ivmpf(o))
        return IntervalReal._wrap(_from_ends(min(a, c), max(b, d)))


def _straddles_zero(v) -> bool:
    lo, hi = _ends(v)
    return lo <= 0 <= hi


def interval(lo: Number, hi: Number | None = None) -> IntervalReal:
    return IntervalReal(lo, hi)


def exp(x: Number) -> IntervalReal:
    return IntervalReal._wrap(ctx.exp(_to_ivmpf(x)))


def log(x: Number) -> IntervalReal:
    v = _to_ivmpf(x)
    if _ends(v)[0] <= 0:
        raise ValueError("log requires a strictly positive interval")
    return IntervalReal._wrap(ctx.log(v))


def sqrt(x: Number) -> IntervalReal:
    v = _to_ivmpf(x)
    if _ends(v)[0] < 0:
        raise ValueError("sqrt requires a non-negative interval")
    return IntervalReal._wrap(ctx.sqrt(v))


def pi() -> IntervalReal:
    return IntervalReal._wrap(+ctx.pi)


def e() -> IntervalReal:
    return IntervalReal._wrap(+ctx.e)


def euler_gamma() -> IntervalReal:
    return IntervalReal._wrap(+ctx.euler)


def lgamma_int(n: int) -> IntervalReal:
    """log(n!) for a non-negative integer n, summed term by term."""
    s = IntervalReal(0)
    for k in range(2, n + 1):
        s = s + log(k)
    return s


def maximum(x: IntervalReal, y: IntervalReal) -> IntervalReal:
    a, b = _ends(x._v)
    c, d = _ends(y._v)
    return IntervalReal._wrap(_from_ends(max(a, c), max(b, d)))


def minimum(x: IntervalReal, y: IntervalReal) -> IntervalReal:
    return -maximum(-x, -y)
