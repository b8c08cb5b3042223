"""Dirichlet characters modulo q and the sums built from them.

A character is stored as a vector of exponents on the generators of
(Z/qZ)^*, one cyclic factor per generator.  Values are exact roots of unity
(:class:`CharacterValue`); the floating-point sums convert only at the end.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .arithmetic import FactoredInteger, euler_phi, factorize

# Components larger than this fall back to baby-step giant-step logs.
TABLE_LIMIT = 2 * 10**6


@dataclass(frozen=True)
class CharacterValue:
    """``exp(2*pi*i*numerator/denominator)``, or zero when ``is_zero``."""

    numerator: int = 0
    denominator: int = 1
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero:
            return
        if self.denominator < 1 or not 0 <= self.numerator < self.denominator:
            raise ValueError(f"bad root of unity {self.numerator}/{self.denominator}")
        if math.gcd(self.numerator, self.denominator) != 1 and not (self.numerator == 0 and self.denominator == 1):
            raise ValueError(f"unreduced root of unity {self.numerator}/{self.denominator}")

    @classmethod
    def root(cls, numerator: int, denominator: int) -> "CharacterValue":
        numerator %= denominator
        g = math.gcd(numerator, denominator)
        if numerator == 0:
            return cls(0, 1)
        return cls(numerator // g, denominator // g)

    @classmethod
    def zero(cls) -> "CharacterValue":
        return cls(0, 1, True)

    def __mul__(self, other: "CharacterValue") -> "CharacterValue":
        if self.is_zero or other.is_zero:
            return CharacterValue.zero()
        d = self.denominator * other.denominator // math.gcd(self.denominator, other.denominator)
        n = self.numerator * (d // self.denominator) + other.numerator * (d // other.denominator)
        return CharacterValue.root(n, d)

    def conjugate(self) -> "CharacterValue":
        if self.is_zero:
            return self
        return CharacterValue.root(-self.numerator, self.denominator)

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        if self.numerator == 0:
            return 1 + 0j
        if 2 * self.numerator == self.denominator:
            return -1 + 0j
        return cmath.exp(2j * math.pi * self.numerator / self.denominator)


@dataclass(frozen=True)
class GroupComponent:
    prime: int
    exponent: int
    prime_power: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]


def _primitive_root_prime_power(p: int, e: int) -> int:
    phi_p = p - 1
    qs = [f for f, _ in factorize(phi_p).factors]
    g = 2
    while True:
        if all(pow(g, phi_p // f, p) != 1 for f in qs):
            break
        g += 1
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g % p**e


def _component(p: int, e: int) -> GroupComponent:
    pe = p**e
    if p == 2:
        if e == 1:
            return GroupComponent(2, 1, 2, (), ())
        if e == 2:
            return GroupComponent(2, 2, 4, (3,), (2,))
        return GroupComponent(2, e, pe, (pe - 1, 5), (2, 2 ** (e - 2)))
    return GroupComponent(p, e, pe, (_primitive_root_prime_power(p, e),), (pe // p * (p - 1),))


def _bsgs(g: int, h: int, n: int, order: int) -> int:
    m = math.isqrt(order) + 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = x * g % n
    step = pow(g, -m, n)
    y = h
    for i in range(m + 1):
        if y in baby:
            return (i * m + baby[y]) % order
        y = y * step % n
    raise ValueError(f"{h} not in subgroup generated by {g} mod {n}")


class UnitGroupStructure:
    """Generators and discrete-log tables for (Z/qZ)^*."""

    def __init__(self, modulus: FactoredInteger):
        self.modulus = modulus
        self.components = tuple(_component(p, e) for p, e in modulus.factors)
        self.orders = tuple(o for c in self.components for o in c.orders)
        self._tables: dict[int, np.ndarray] = {}

    @property
    def q(self) -> int:
        return self.modulus.value

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def num_generators(self) -> int:
        return len(self.orders)

    def __repr__(self):
        comps = ", ".join(f"{c.prime_power}:{list(c.generators)}/{list(c.orders)}" for c in self.components)
        return f"UnitGroupStructure(q={self.q}, [{comps}])"

    def _component_table(self, idx: int) -> np.ndarray:
        """Rows indexed by residue mod p^e; columns are logs, -1 on non-units."""
        if idx in self._tables:
            return self._tables[idx]
        c = self.components[idx]
        pe = c.prime_power
        table = np.full((pe, len(c.generators)), -1, dtype=np.int64)
        if c.prime == 2 and c.exponent >= 3:
            five = 1
            for b in range(c.orders[1]):
                table[five, 0], table[five, 1] = 0, b
                table[pe - five, 0], table[pe - five, 1] = 1, b
                five = five * 5 % pe
        elif c.generators:
            g = c.generators[0]
            x = 1
            for k in range(c.orders[0]):
                table[x, 0] = k
                x = x * g % pe
        self._tables[idx] = table
        return table

    def component_logs(self, idx: int, n: int) -> tuple[int, ...] | None:
        c = self.components[idx]
        pe = c.prime_power
        r = n % pe
        if r % c.prime == 0:
            return None
        if not c.generators:
            return ()
        if pe <= TABLE_LIMIT:
            return tuple(int(v) for v in self._component_table(idx)[r])
        if c.prime == 2:
            a = 0 if r % 4 == 1 else 1
            r = r if a == 0 else pe - r
            return (a, _bsgs(5, r, pe, c.orders[1]))
        return (_bsgs(c.generators[0], r, pe, c.orders[0]),)

    def logs(self, n: int) -> tuple[int, ...] | None:
        """Discrete logs of ``n`` on every generator, or ``None`` if gcd(n, q) > 1."""
        out: list[int] = []
        for idx in range(len(self.components)):
            part = self.component_logs(idx, n)
            if part is None:
                return None
            out.extend(part)
        return tuple(out)

    @cached_property
    def log_table(self) -> np.ndarray:
        """(q, num_generators) array of logs for every residue; rows of -1 mark non-units."""
        q = self.q
        n = np.arange(q, dtype=np.int64)
        cols = []
        unit = np.ones(q, dtype=bool)
        for idx, c in enumerate(self.components):
            tab = self._component_table(idx)
            part = tab[n % c.prime_power]
            unit &= (n % c.prime) != 0
            cols.append(part)
        out = np.concatenate(cols, axis=1) if cols else np.zeros((q, 0), dtype=np.int64)
        out[~unit] = -1
        return out

    @cached_property
    def unit_mask(self) -> np.ndarray:
        n = np.arange(self.q, dtype=np.int64)
        return np.gcd(n, self.q) == 1


@lru_cache(maxsize=4096)
def unit_group(q: FactoredInteger | int) -> UnitGroupStructure:
    if not isinstance(q, FactoredInteger):
        q = factorize(int(q))
    return UnitGroupStructure(q)


def _component_conductor(c: GroupComponent, exps: Sequence[int]) -> int:
    if not c.generators or not any(exps):
        return 1
    if c.prime == 2:
        if c.exponent == 2:
            return 4
        a, b = exps
        if b == 0:
            return 4
        j = (c.orders[1] // math.gcd(b, c.orders[1])).bit_length() - 1
        return 2 ** (j + 2)
    o = c.orders[0] // math.gcd(exps[0], c.orders[0])
    j = 0
    while o % c.prime == 0:
        o //= c.prime
        j += 1
    return c.prime ** (j + 1)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    group: UnitGroupStructure
    exponents: tuple[int, ...]
    cached_conductor: int = field(init=False)

    def __post_init__(self):
        if len(self.exponents) != self.group.num_generators:
            raise ValueError("exponent vector length must match the number of generators")
        for e, o in zip(self.exponents, self.group.orders):
            if not 0 <= e < o:
                raise ValueError(f"exponent {e} out of range for generator order {o}")
        f = 1
        pos = 0
        for c in self.group.components:
            k = len(c.generators)
            f *= _component_conductor(c, self.exponents[pos:pos + k])
            pos += k
        object.__setattr__(self, "cached_conductor", f)

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and self.q == other.q
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash((self.q, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter(q={self.q}, exponents={self.exponents})"

    @property
    def q(self) -> int:
        return self.group.q

    @property
    def modulus(self) -> FactoredInteger:
        return self.group.modulus

    @property
    def is_primitive(self) -> bool:
        return self.cached_conductor == self.q

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def _weights(self) -> tuple[int, tuple[int, ...]]:
        den = math.lcm(*self.group.orders) if self.group.orders else 1
        return den, tuple(e * (den // o) for e, o in zip(self.exponents, self.group.orders))

    @property
    def order(self) -> int:
        den, w = self._weights
        return den // math.gcd(den, *w)

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.group, tuple((-e) % o for e, o in zip(self.exponents, self.group.orders)))

    def eval(self, n: int) -> CharacterValue:
        logs = self.group.logs(n)
        if logs is None:
            return CharacterValue.zero()
        den, w = self._weights
        return CharacterValue.root(sum(a * b for a, b in zip(logs, w)), den)

    def __call__(self, n: int) -> complex:
        return complex(self.eval(n))

    def numerators(self) -> np.ndarray:
        """Integer phases mod ``phase_denominator`` for n = 0..q-1; -1 off the unit group."""
        den, w = self._weights
        tab = self.group.log_table
        num = (tab @ np.asarray(w, dtype=np.int64)) % den if w else np.zeros(self.q, dtype=np.int64)
        return np.where(tab[:, 0] >= 0, num, -1) if w else np.where(self.group.unit_mask, 0, -1)

    @property
    def phase_denominator(self) -> int:
        return self._weights[0]

    def values(self) -> np.ndarray:
        """Complex values chi(n) for n = 0..q-1."""
        num = self.numerators()
        den = self.phase_denominator
        out = np.exp(2j * np.pi * np.where(num >= 0, num, 0) / den)
        out[num < 0] = 0
        return out


def enumerate_characters(q: FactoredInteger | int, primitive_only: bool = False) -> list[DirichletCharacter]:
    """All characters mod q in lexicographic order of exponent vectors."""
    g = unit_group(q)
    chars = (DirichletCharacter(g, exps) for exps in itertools.product(*(range(o) for o in g.orders)))
    if primitive_only:
        return [c for c in chars if c.is_primitive]
    return list(chars)


def character_by_index(q: int, index: int, primitive_only: bool = False) -> DirichletCharacter:
    chars = enumerate_characters(q, primitive_only)
    if not 0 <= index < len(chars):
        kind = "primitive characters" if primitive_only else "characters"
        raise IndexError(f"modulus {q} has {len(chars)} {kind}; index {index} out of range")
    return chars[index]


def conductor(chi: DirichletCharacter) -> int:
    return chi.cached_conductor


def evaluate(chi: DirichletCharacter, n: int) -> CharacterValue:
    return chi.eval(n)


def char_sum(chi: DirichletCharacter, M: int, N: int) -> complex:
    """Sum of chi(n) over M < n <= M + N."""
    if N < 1:
        raise ValueError("char_sum requires N >= 1")
    q = chi.q
    vals = chi.values()
    full, rest = divmod(N, q)
    total = full * vals.sum() if full else 0j
    if rest:
        idx = (np.arange(M + 1, M + rest + 1) % q)
        total += vals[idx].sum()
    return complex(total)


def complete_poly_sum(chi: DirichletCharacter, b: Sequence[int], r: int) -> complex:
    """Sum over x mod q of chi(f1(x) * f2(x)^(phi(q)-1)) by direct evaluation."""
    b = tuple(int(v) for v in b)
    if len(b) != 2 * r:
        raise ValueError(f"expected a tuple of length {2 * r}, got {len(b)}")
    q = chi.q
    phi_q = euler_phi(chi.modulus)
    num = chi.numerators()
    den = chi.phase_denominator
    counts = np.zeros(den, dtype=np.int64)
    for x in range(q):
        f1 = 1
        for v in b[:r]:
            f1 = f1 * (x - v) % q
        f2 = 1
        for v in b[r:]:
            f2 = f2 * (x - v) % q
        k = num[f1 * pow(f2, phi_q - 1, q) % q]
        if k >= 0:
            counts[k] += 1
    return complex(np.sum(counts * np.exp(2j * np.pi * np.arange(den) / den)))


# --- exact sums of roots of unity -------------------------------------------------

@lru_cache(maxsize=256)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def root_sum_is_zero(counts: Sequence[int]) -> bool:
    """True iff sum_k counts[k] * zeta_L^k == 0 exactly, with L = len(counts)."""
    L = len(counts)
    rem = [int(c) for c in counts]
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            for j, pj in enumerate(phi):
                rem[i - deg + j] -= c * pj
    return not any(rem[:deg])


def char_sum_exact_counts(chi: DirichletCharacter, M: int, N: int) -> list[int]:
    """Multiplicity of each phase k/den among chi(n), M < n <= M + N."""
    num = chi.numerators()
    den = chi.phase_denominator
    idx = np.arange(M + 1, M + N + 1) % chi.q
    ks = num[idx]
    return np.bincount(ks[ks >= 0], minlength=den).tolist()
