"""Shift tuples, the gcd sum s_q(r, B), and the explicit Weil-type inequality.

Everything here is brute force on purpose: the tuple space {1..floor(B)}^(2r)
is enumerated exactly (capped at ``ENUMERATION_BUDGET`` tuples) and the
moment sum on the left of the inequality is computed by the direct double
loop over residues x and shifts b.

Convention: a tuple in which no coordinate is unique has every A_j = 0, so
the set inside the min defining s_q is empty.  Such tuples contribute 0.
They are never good tuples, so this never touches the complete-sum lemma.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .arithmetic import FactoredInteger, factorize, is_cubefree, m_r_exact, omega, tau, tau_k
from .characters import DirichletCharacter, complete_poly_sum, enumerate_characters
from .reports import FAIL, PASS, VerificationReport, status_from_margin

ENUMERATION_BUDGET = 10**8
# Relative slack applied to floating-point left-hand sides before comparing.
LHS_REL_TOL = 1e-6
# Tuples materialized at once when sweeping the tuple space.
_CHUNK = 1 << 20


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TupleAnalysis:
    b: tuple[int, ...]
    a_products: tuple[int, ...]
    distinct_count: int
    is_good: bool


def _fq(q) -> FactoredInteger:
    return q if isinstance(q, FactoredInteger) else factorize(int(q))


def _floor_b(B: float) -> int:
    if B < 2:
        raise ValueError(f"B must be >= 2, got {B}")
    return math.floor(B)


def analyze_tuple(b: Sequence[int], r: int) -> TupleAnalysis:
    b = tuple(int(v) for v in b)
    if len(b) != 2 * r:
        raise ValueError(f"expected a tuple of length {2 * r}, got {len(b)}")
    prods = []
    for j, bj in enumerate(b):
        p = 1
        for i, bi in enumerate(b):
            if i != j:
                p *= bi - bj
        prods.append(p)
    distinct = len(set(b))
    return TupleAnalysis(b, tuple(prods), distinct, distinct >= r + 1)


def _check_budget(fb: int, r: int) -> None:
    if fb ** (2 * r) > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"floor(B)^(2r) = {fb}^{2 * r} exceeds the budget of {ENUMERATION_BUDGET} tuples")


def _tuple_chunks(fb: int, r: int) -> Iterable[np.ndarray]:
    """All tuples of {1..fb}^(2r) in lexicographic order, as int64 arrays of rows."""
    n = 2 * r
    tail = n
    while tail > 0 and fb**tail > _CHUNK:
        tail -= 1
    tail = max(tail, 1)
    grid = np.indices((fb,) * tail).reshape(tail, -1).T + 1
    head = n - tail
    if head == 0:
        yield grid
        return
    for prefix in np.ndindex(*(fb,) * head):
        pre = np.broadcast_to(np.asarray(prefix, dtype=np.int64) + 1, (grid.shape[0], head))
        yield np.concatenate([pre, grid], axis=1)


def _products(tuples: np.ndarray) -> np.ndarray:
    """A_j = prod_{i != j} (b_i - b_j) for every row."""
    diffs = tuples[:, :, None] - tuples[:, None, :]  # [row, i, j] = b_i - b_j
    n = tuples.shape[1]
    diffs[:, np.arange(n), np.arange(n)] = 1
    return np.prod(diffs, axis=1)


@lru_cache(maxsize=32)
def _cached_tables(fb: int, r: int) -> tuple[np.ndarray, np.ndarray] | None:
    if fb ** (2 * r) > _CHUNK:
        return None
    tuples = next(iter(_tuple_chunks(fb, r)))
    return tuples, _products(tuples)


def _product_chunks(fb: int, r: int):
    cached = _cached_tables(fb, r)
    if cached is not None:
        yield cached
        return
    for chunk in _tuple_chunks(fb, r):
        yield chunk, _products(chunk)


def s_q_exact(q, r: int, B: float) -> int:
    """Sum over {1..floor(B)}^(2r) of min{gcd(A_j, q) : A_j != 0}."""
    fq = _fq(q)
    fb = _floor_b(B)
    _check_budget(fb, r)
    total = 0
    for _, prods in _product_chunks(fb, r):
        g = np.gcd(prods, fq.value)
        g = np.where(prods != 0, g, np.iinfo(np.int64).max)
        m = g.min(axis=1)
        total += int(m[m != np.iinfo(np.int64).max].sum())
    return total


def bound_no_keep_gcd(q, r: int, B: float) -> Fraction:
    """2r (tau(q)/2)^(2r-1) floor(B)^(2r); only claimed for B < sqrt(q)."""
    fb = _floor_b(B)
    return 2 * r * Fraction(tau(_fq(q)), 2) ** (2 * r - 1) * fb ** (2 * r)


def bound_keep_gcd(q, r: int, B: float) -> int:
    fb = _floor_b(B)
    return 2 * r * fb ** (2 * r) * tau_k(_fq(q), 2 * r)


def trivial_bound(q, r: int, B: float) -> int:
    return _floor_b(B) ** (2 * r) * _fq(q).value


def _window_sums(values: np.ndarray, fb: int) -> np.ndarray:
    """S[..., x] = sum_{b=1}^{fb} values[..., (x + b) mod q] for x = 0..q-1."""
    q = values.shape[-1]
    out = np.zeros_like(values)
    for b in range(1, fb + 1):
        out += np.roll(values, -(b % q), axis=-1)
    return out


def weil_lhs(chi: DirichletCharacter, r: int, B: float) -> float:
    """sum_{x=1}^{q} |sum_{1<=b<=B} chi(x+b)|^(2r)."""
    fb = _floor_b(B)
    s = _window_sums(chi.values(), fb)
    return float(np.sum(np.abs(s) ** (2 * r)))


def weil_lhs_batch(chars: Sequence[DirichletCharacter], r: int, B: float) -> np.ndarray:
    """Vectorized :func:`weil_lhs` for characters sharing a modulus."""
    if not chars:
        return np.zeros(0)
    fb = _floor_b(B)
    vals = np.stack([c.values() for c in chars])
    s = _window_sums(vals, fb)
    return np.sum(np.abs(s) ** (2 * r), axis=1)


def weil_rhs(q, r: int, B: float, floor_form: bool = False) -> float:
    """2r (4r)^omega(q) B^(2r) m_r(q) sqrt(q) + r^(2r)/r! B^r q.

    ``floor_form`` uses floor(B) in place of B, the sharper shape the proof
    actually delivers.
    """
    if B < 2 or r < 2:
        raise ValueError("weil_rhs needs B >= 2 and r >= 2")
    fq = _fq(q)
    Bv = math.floor(B) if floor_form else B
    first = 2 * r * (4 * r) ** omega(fq) * Bv ** (2 * r) * float(m_r_exact(fq, r)) * math.sqrt(fq.value)
    second = r ** (2 * r) / math.factorial(r) * Bv**r * fq.value
    return first + second


def admissible(q, r: int) -> bool:
    return r == 2 or is_cubefree(_fq(q))


def _margin_report(claim: str, params: dict, rhs: float, lhs: float, *, notes: str = "",
                   sort_key: tuple = ()) -> VerificationReport:
    lo = rhs - lhs * (1 + LHS_REL_TOL)
    hi = rhs - lhs * (1 - LHS_REL_TOL)
    return VerificationReport(claim, "weil", params, status_from_margin(lo, hi), lo, hi,
                              notes=notes, sort_key=sort_key)


def _weil_for_modulus(args) -> list[VerificationReport]:
    q, r_set, B_set, floor_form = args
    fq = factorize(q)
    chars = enumerate_characters(fq, primitive_only=True)
    out = []
    if not chars:
        return out
    for r in r_set:
        if not admissible(fq, r):
            continue
        for B in B_set:
            lhs = weil_lhs_batch(chars, r, B)
            rhs = weil_rhs(fq, r, B, floor_form)
            for k, (c, val) in enumerate(zip(chars, lhs)):
                params = {"q": q, "char_index": k, "exponents": list(c.exponents), "r": r, "B": B,
                          "lhs": float(val), "rhs": rhs}
                out.append(_margin_report("weil_inequality", params, rhs, float(val),
                                          sort_key=(q, k, r, B)))
    return out


def check_weil_sweep(q_range: Iterable[int], r_set: Sequence[int], B_set: Sequence[float],
                     workers: int = 1, floor_form: bool = False) -> list[VerificationReport]:
    """Weil-type inequality for every primitive character of every admissible q.

    Moduli with r >= 3 and q not cubefree fall outside the theorem and are skipped.
    Reports come back sorted by (q, character index, r, B).
    """
    jobs = [(int(q), tuple(r_set), tuple(B_set), floor_form) for q in q_range]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_weil_for_modulus, jobs, chunksize=4))
    else:
        parts = [_weil_for_modulus(j) for j in jobs]
    reports = [rep for part in parts for rep in part]
    reports.sort(key=lambda rep: rep.sort_key)
    return reports


def check_sq_bounds(q, r: int, B: float) -> list[VerificationReport]:
    """s_q against the trivial bound and both divisor-function bounds."""
    fq = _fq(q)
    s = s_q_exact(fq, r, B)
    params = {"q": fq.value, "r": r, "B": B, "s_q": s}
    key = (fq.value, r, B)
    out = []
    for cid, bound in (("sq_trivial", trivial_bound(fq, r, B)),
                       ("sq_keep_gcd", bound_keep_gcd(fq, r, B))):
        m = float(bound - s)
        out.append(VerificationReport(cid, "weil", {**params, "bound": float(bound)},
                                      PASS if bound >= s else FAIL, m if m > 0 else None, m,
                                      notes="bound attained" if m == 0 else "",
                                      sort_key=key))
    if B < math.sqrt(fq.value):
        bound = bound_no_keep_gcd(fq, r, B)
        m = float(bound - s)
        out.append(VerificationReport("sq_no_keep_gcd", "weil", {**params, "bound": float(bound)},
                                      PASS if bound >= s else FAIL, m if m > 0 else None, m,
                                      sort_key=key))
    return out


def classify_tuples(B: float, r: int) -> tuple[int, int]:
    """(good, bad) counts over {1..floor(B)}^(2r); good means >= r+1 distinct entries."""
    fb = _floor_b(B)
    _check_budget(fb, r)
    good = 0
    total = 0
    for chunk in _tuple_chunks(fb, r):
        srt = np.sort(chunk, axis=1)
        distinct = 1 + np.count_nonzero(np.diff(srt, axis=1), axis=1)
        good += int(np.count_nonzero(distinct >= r + 1))
        total += chunk.shape[0]
    return good, total - good


def bad_tuple_bound(B: float, r: int) -> int:
    return r ** (2 * r) * math.comb(_floor_b(B), r)


def lemma_2_2_bound(q, b: Sequence[int], r: int) -> float:
    """(4r)^omega(q) sqrt(q) max{gcd(A_j, q) : A_j != 0}."""
    fq = _fq(q)
    t = analyze_tuple(b, r)
    g = max(math.gcd(a, fq.value) for a in t.a_products if a != 0)
    return (4 * r) ** omega(fq) * math.sqrt(fq.value) * g


def check_lemma_2_2(chi: DirichletCharacter, b: Sequence[int], r: int) -> VerificationReport:
    """Check the weakest consequence of the complete-sum lemma on one good tuple.

    The lemma promises some j with A_j != 0 and the sum at most
    (4r)^omega sqrt(q) gcd(A_j, q), so the max over j is always a valid upper bound.
    """
    t = analyze_tuple(b, r)
    if not t.is_good:
        raise ValueError(f"tuple {t.b} has only {t.distinct_count} distinct values; need {r + 1}")
    if not admissible(chi.modulus, r):
        raise ValueError(f"q={chi.q} must be cubefree when r >= 3")
    lhs = abs(complete_poly_sum(chi, t.b, r))
    rhs = lemma_2_2_bound(chi.modulus, t.b, r)
    params = {"q": chi.q, "exponents": list(chi.exponents), "b": list(t.b), "r": r,
              "lhs": lhs, "rhs": rhs}
    return _margin_report("complete_sum", params, rhs, lhs, sort_key=(chi.q, chi.exponents, t.b))


def check_lemma_2_2_random(trials: int, seed: int, q_max: int = 150, entry_max: int = 8,
                           r: int = 2) -> list[VerificationReport]:
    """Seeded random (cubefree q, primitive chi, good tuple) instances of the complete-sum check."""
    rng = random.Random(seed)
    moduli = [q for q in range(3, q_max + 1)
              if admissible(q, r) and is_cubefree(q) and enumerate_characters(q, primitive_only=True)]
    out = []
    while len(out) < trials:
        q = rng.choice(moduli)
        chars = enumerate_characters(q, primitive_only=True)
        chi = chars[rng.randrange(len(chars))]
        b = tuple(rng.randint(1, entry_max) for _ in range(2 * r))
        if not analyze_tuple(b, r).is_good:
            continue
        rep = check_lemma_2_2(chi, b, r)
        rep.seed = seed
        out.append(rep)
    return out
