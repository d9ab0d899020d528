"""Multi-step case analyses assembled from registry entries, and the m/c/d chain."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from mpmath import mpf

from ..errors import DomainError, UndecidedError
from ..numerics import GuardedReal, Ordering, decide, isqrt
from . import constants as K
from .registry import IneqId, _largest_true, max_a2_satisfying

F = Fraction


def _ln10(prec: int) -> GuardedReal:
    return GuardedReal.exact(10, prec).log()


# -- c bound from n > 0.2465 c^(1/12) ------------------------------------------


@dataclass(frozen=True)
class CBoundSpec:
    """RHS(c) = 8 log(K1 a^(11/2) c) log(K2 a^e2 c) / (log(b c) log(K4 a^-7 c)).

    Every ``a`` sits at the end of the a1 range that maximizes its own
    logarithm argument; ``b`` is the smallest admissible b.
    """

    k1: Fraction
    a_first: int
    k2: Fraction
    a_second: int
    e2: Fraction
    b: int
    k4: Fraction
    a_fourth: int

    def log_terms(self, u: Fraction, prec: int):
        """The four logs at c = 10^u."""
        lc = _ln10(prec) * u

        def lg(coef, a, e):
            out = GuardedReal.exact(coef, prec).log() + lc
            if e:
                out = out + GuardedReal.exact(a, prec).log() * e
            return out

        return (
            lg(self.k1, self.a_first, F(11, 2)),
            lg(self.k2, self.a_second, self.e2),
            lg(1, self.b, 1),
            lg(self.k4, self.a_fourth, -7),
        )


def _c_holds(spec: CBoundSpec, u: Fraction) -> bool:
    def build(prec):
        l1, l2, l3, l4 = spec.log_terms(u, prec)
        lhs = K.N_C_TWELFTH * (_ln10(prec) * (u / 12)).exp()
        return lhs, K.NU_FACTOR * l1 * l2 / (l3 * l4)

    for idx in range(4):
        if not spec.log_terms(u, 128)[idx].is_positive():
            return False
    verdict = decide(build)
    if verdict is Ordering.UNDECIDED:
        raise UndecidedError("c bound comparison undecided", boundary=float(u))
    return verdict is Ordering.LESS


def max_c(spec: CBoundSpec, u_lo: Fraction = F(10), u_hi: Fraction = F(200),
          tol: Fraction = F(1, 10**9)) -> GuardedReal:
    """Enclosure [10^u_true, 10^u_false] of the largest c where the inequality holds."""
    # small c can make the last log argument < 1; step up to where it holds
    start = u_lo
    while start < u_hi and not _c_holds(spec, start):
        start += 1
    if start >= u_hi or _c_holds(spec, u_hi):
        raise DomainError("c bound bracket does not straddle the cutoff")
    a, b = start, u_hi
    while b - a > tol:
        mid = (a + b) / 2
        mid = F(round(mid * 10**12), 10**12)
        if _c_holds(spec, mid):
            a = mid
        else:
            b = mid
    prec = 128
    lo = (_ln10(prec) * a).exp()
    hi = (_ln10(prec) * b).exp()
    return GuardedReal((lo._iv[0], hi._iv[1]), prec)


def _a1_floor(coef: Fraction) -> int:
    """Smallest a1 with 4 a1 < coef a1^2."""
    return math.floor(4 / coef) + 1


@dataclass(frozen=True)
class SmallA2Analysis:
    """Outcome of assuming a2 <= coef * a1^2, split at b = a1^2."""

    coef: Fraction
    a1_min: int
    a1_max: int
    c_max: GuardedReal
    b_ceiling_coeff: mpf  # b < b_ceiling_coeff * a1^(-2/3)
    case2_b_max: int

    def b_ceiling(self, a1: int) -> mpf:
        return self.b_ceiling_coeff * mpf(a1) ** (mpf(-2) / 3)


def _b_ceiling_coeff(c_max: GuardedReal) -> mpf:
    # c > 0.25 a1^2 b^3 gives b < (4c/a1^2)^(1/3)
    return (4 * c_max.hi) ** (mpf(1) / 3)


def analysis_a2_001() -> SmallA2Analysis:
    coef = F("0.01")
    lo = _a1_floor(coef)
    hi = max_a2_satisfying(IneqId.A2_01_CASE1)
    spec = CBoundSpec(F("1.6807e9"), hi, F("0.00685"), hi, F(1, 2), lo * lo, F("421250"), lo)
    c_max = max_c(spec)
    return SmallA2Analysis(coef, lo, hi, c_max, _b_ceiling_coeff(c_max),
                           max_a2_satisfying(IneqId.A2_01_CASE2))


def analysis_a2_00251(second_exponent: str = "consistent") -> SmallA2Analysis:
    """``second_exponent`` selects a1^(+1/2) ("consistent") or a1^(-1/2) ("printed")
    in the second logarithm of the c step."""
    coef = F("0.0251")
    lo = _a1_floor(coef)
    hi = max_a2_satisfying(IneqId.A2_0251_CASE1)
    if second_exponent == "consistent":
        e2, a_second = F(1, 2), hi
    elif second_exponent == "printed":
        e2, a_second = F(-1, 2), lo
    else:
        raise DomainError(f"unknown exponent variant {second_exponent!r}")
    spec = CBoundSpec(F("1.678e10"), hi, F("0.3286"), a_second, e2, lo * lo, F("10613"), lo)
    c_max = max_c(spec)
    return SmallA2Analysis(coef, lo, hi, c_max, _b_ceiling_coeff(c_max),
                           max_a2_satisfying(IneqId.A2_0251_CASE2))


# -- b versus a2^2 -------------------------------------------------------------


@dataclass(frozen=True)
class BVersusA2Analysis:
    small_a1_b_max: int
    small_a1_a2_max: int
    large_a1_k3_a2_max: int
    large_a1_k1_a2_max: int
    b_ceiling: int  # b < 3 a2^2 <= b_ceiling


def analysis_b_vs_a2() -> BVersusA2Analysis:
    b_max = max_a2_satisfying(IneqId.SEC6_SMALL_A1)
    k3 = max_a2_satisfying(IneqId.SEC6_LARGE_A1, F(3))
    k1 = max_a2_satisfying(IneqId.SEC6_LARGE_A1, F(1))
    return BVersusA2Analysis(b_max, isqrt(b_max), k3, k1, 3 * k1 * k1)


# -- m, c, d ------------------------------------------------------------------


class MBound(NamedTuple):
    m_max: int
    c_log10_max: int
    d_log10_log10: int


def _m_holds(m: int) -> bool:
    def build(prec):
        g = GuardedReal.exact
        lm = g(m, prec).log()
        left = g(m, prec) / ((g(K.M_LOG_COEFF * (m + 1), prec)).log() * lm * lm)
        return left, g(K.M_RHS, prec)

    verdict = decide(build)
    if verdict is Ordering.UNDECIDED:
        raise UndecidedError("m bound comparison undecided", boundary=m)
    return verdict is Ordering.LESS


def m_max_bound() -> int:
    """Largest m with m / (log(38.92(m+1)) log^2 m) below the constant."""
    m = _largest_true(_m_holds, 3, 10**40)
    # sign change at the bracket
    assert _m_holds(m) and not _m_holds(m + 1)
    return m


def _ceil_log10(x: GuardedReal) -> int:
    """ceil(log10 x), decided on the enclosure."""
    l = x.log() / _ln10(x.precision)
    lo, hi = math.floor(l.lo), math.floor(l.hi)
    if lo != hi:
        raise UndecidedError("log10 straddles an integer", boundary=float(l.mid()))
    return lo + 1


def d_bound_chain(m_max: int, c_log10_max: int, prec: int = 256):
    """(log10 log10 v_m, log10 log10 d) upper exponents from
    v_m < 1.00317 c^0.64 c^(0.7 m) and d < v_m^2."""
    g = GuardedReal.exact
    log10_v = g(K.V_LEAD, prec).log() / _ln10(prec) + (K.V_C_POWER + K.V_M_POWER * m_max) * c_log10_max
    v_exp = _ceil_log10(log10_v)
    d_exp = _ceil_log10(2 * log10_v)
    return v_exp, d_exp


def solve_m_bound() -> MBound:
    m = m_max_bound()
    # c < m^100, rounded up to a power of ten
    c_exp = _ceil_log10(GuardedReal.exact(m, 256) ** 100)
    _v_exp, d_exp = d_bound_chain(m, c_exp)
    return MBound(m, c_exp, d_exp)
