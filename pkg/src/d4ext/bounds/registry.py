"""Registry of the one-variable inequalities LHS(x) < RHS(x) behind each cutoff.

Every entry has the shape

    LHS = prod(base_i ** e_i) * x**p * k**q
    RHS = 8 * log(M1) * log(M2) / (log(M3) * log(M4))

where each M_j is a monomial ``coef * x**a * k**b``.  The lower bounds for c
and b that each case substitutes are already folded into the monomials, so an
entry is a closed predicate in x (and k).  "Holds" means all four logarithms are
provably positive and LHS < RHS; the cutoff is the largest x where it holds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import DomainError, UndecidedError
from ..numerics import GuardedReal, Ordering, decide, get_start_precision
from . import constants as K

F = Fraction


class IneqId(enum.Enum):
    THM51_CASE1 = "thm51-case1"
    THM51_CASE2 = "thm51-case2"
    PROP_4A1 = "prop-4a1"
    A2_01_CASE1 = "a2-01-case1"
    A2_01_CASE2 = "a2-01-case2"
    A2_0251_CASE1 = "a2-0251-case1"
    A2_0251_CASE2 = "a2-0251-case2"
    SEC6_SMALL_A1 = "sec6-small-a1"
    SEC6_LARGE_A1 = "sec6-large-a1"
    LEMMA31_CONTRADICTION = "lemma31-contradiction"

    @classmethod
    def parse(cls, text: str) -> "IneqId":
        key = text.strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise DomainError(f"unknown inequality id {text!r}")


@dataclass(frozen=True)
class Monomial:
    coef: Fraction
    x_exp: Fraction = F(0)
    k_exp: Fraction = F(0)

    def log(self, x: int, k: Fraction, prec: int) -> GuardedReal:
        # sum of logs keeps huge arguments out of the interval arithmetic
        out = GuardedReal.exact(self.coef, prec).log()
        if self.x_exp:
            out = out + GuardedReal.exact(x, prec).log() * self.x_exp
        if self.k_exp and k != 1:
            out = out + GuardedReal.exact(k, prec).log() * self.k_exp
        return out


def _m(coef, x_exp=0, k_exp=0) -> Monomial:
    return Monomial(F(coef), F(x_exp), F(k_exp))


@dataclass(frozen=True)
class Inequality:
    ident: str
    variable: str
    lhs_factors: Tuple[Tuple[Fraction, Fraction], ...]
    lhs_x_exp: Fraction
    lhs_k_exp: Fraction
    numer: Tuple[Monomial, Monomial]
    denom: Tuple[Monomial, Monomial]
    domain_lo: int = 3
    domain_hi: int = 10**9
    refinable: bool = False
    factor: int = K.NU_FACTOR
    note: str = ""

    def lhs(self, x: int, k: Fraction, prec: int) -> GuardedReal:
        out = GuardedReal.exact(1, prec)
        for base, exp in self.lhs_factors:
            out = out * (GuardedReal.exact(base, prec) ** exp if exp != 1 else GuardedReal.exact(base, prec))
        if self.lhs_x_exp:
            out = out * GuardedReal.exact(x, prec) ** self.lhs_x_exp
        if self.lhs_k_exp and k != 1:
            out = out * GuardedReal.exact(k, prec) ** self.lhs_k_exp
        return out

    def logs(self, x: int, k: Fraction, prec: int) -> List[GuardedReal]:
        return [m.log(x, k, prec) for m in self.numer + self.denom]

    def rhs(self, x: int, k: Fraction, prec: int) -> GuardedReal:
        l1, l2, l3, l4 = self.logs(x, k, prec)
        return self.factor * l1 * l2 / (l3 * l4)


def _lhs(*factors) -> Tuple[Tuple[Fraction, Fraction], ...]:
    return tuple((F(b), F(e)) for b, e in factors)


_Q = F(1, 4)
_NL = K.NL_ODD

# b > k a2 with c > 0.0625 k^3 a2^5 and c/b^2 > 6.25e3 a2^2
REGISTRY: Dict[IneqId, Inequality] = {
    IneqId.THM51_CASE1: Inequality(
        "thm51-case1", "a2",
        _lhs((_NL, 1), ("6.25e3", _Q)), F(1, 2), F(0),
        (_m("1.050425e13", 8, 3), _m("0.006417", 6, 3)),
        (_m("0.0625", 6, 4), _m("0.001053125", 2, 3)),
        refinable=True,
    ),
    # c > 0.25 k^3 a2^5 pushed through the three upper/lower estimates
    IneqId.THM51_CASE2: Inequality(
        "thm51-case2", "a2",
        _lhs((_NL, 1), ("0.25e5", _Q)), F(1, 2), F(0),
        (_m(F("1.1885e14") * F("0.25"), 8, 3), _m(F("0.29039") * F("0.25"), 5, 3)),
        (_m("0.25", 6, 4), _m(F("0.0042125") * F("0.25"), 1, 3)),
        refinable=True,
        note="coefficients derived from c > 0.25 a2^5 k^3",
    ),
    IneqId.PROP_4A1: Inequality(
        "prop-4a1", "a2",
        _lhs((_NL, 1), ("1.5625e3", _Q)), F(1, 2), F(0),
        (_m(F("1.02921e14") / 64, 8, 3), _m(F("0.29039") / 64, 5, 3)),
        (_m(F(1, 64), 6, 4), _m(F("0.002496") / 64, 2, 3)),
        refinable=True,
    ),
    # variable a1, with b = a1^2 and c = 0.25 a1^8
    IneqId.A2_01_CASE1: Inequality(
        "a2-01-case1", "a1",
        _lhs((_NL, 1), ("0.25", _Q)), F(1), F(0),
        (_m(F("1.6807e9") * F("0.25"), F(27, 2)), _m(F("0.00685") * F("0.25"), F(17, 2))),
        (_m("0.25", 10), _m(F("421250") * F("0.25"), 1)),
        domain_lo=2,
    ),
    # variable b, numerators already bounded in terms of b alone
    IneqId.A2_01_CASE2: Inequality(
        "a2-01-case2", "b",
        _lhs((_NL, 1), ("0.25", _Q)), F(1, 2), F(0),
        (_m("2.101e13", 8), _m("0.03425", 5)),
        (_m("0.25", 5), _m("4.3125e6", -3)),
        domain_lo=2,
    ),
    IneqId.A2_0251_CASE1: Inequality(
        "a2-0251-case1", "a1",
        _lhs((_NL, 1), ("0.25", _Q)), F(1), F(0),
        (_m(F("1.678e10") * F("0.25"), F(27, 2)), _m(F("0.3286") * F("0.25"), F(15, 2))),
        (_m("0.25", 10), _m(F("10613") * F("0.25"), 1)),
        domain_lo=2,
    ),
    IneqId.A2_0251_CASE2: Inequality(
        "a2-0251-case2", "b",
        _lhs((_NL, 1), ("0.25", _Q)), F(1, 2), F(0),
        (_m("2.101e13", 8), _m("3.645", 5)),
        (_m("0.25", 5), _m("272500", -3)),
        domain_lo=2,
    ),
    # variable b with c = b^3; n > 0.09226 * 0.5^(1/4) * b^(1/4)
    IneqId.SEC6_SMALL_A1: Inequality(
        "sec6-small-a1", "b",
        _lhs((_NL, 1), ("0.5", _Q)), F(1, 4), F(0),
        (_m("8.4034e13", F(9, 2)), _m("0.0153", F(7, 2))),
        (_m(1, 4), _m("0.0000115", 3)),
        domain_lo=K.B_FLOOR + 1,
        domain_hi=10**12,
        note="lhs coefficient 0.5^(1/4) from (c/b^2)^(1/4) with c >= b^3, b >= a2^2",
    ),
    # b >= k a2^2, c > 6400 k^3 a2^6
    IneqId.SEC6_LARGE_A1: Inequality(
        "sec6-large-a1", "a2",
        _lhs((_NL, 1), (6400, _Q)), F(1, 2), F(1, 4),
        (_m("2.7136e18", F(35, 4), 3), _m("4599.392", F(23, 4), 3)),
        (_m(6400, 8, 4), _m("4313.6", 2, 3)),
    ),
    # c = 1.186e42 a2^6 and log(bc) with b > 2.376e14 a2^2
    IneqId.LEMMA31_CONTRADICTION: Inequality(
        "lemma31-contradiction", "a2",
        _lhs((_NL, 1), ("4.2e13", _Q)), F(1, 2), F(0),
        (_m(F("1.681e14") * F("1.186e42"), 9), _m(F("0.102665") * F("1.186e42"), 7)),
        (_m(F("2.376e14") * F("1.186e42"), 8), _m(F("0.0042125") * F("1.186e42"), 2)),
        domain_lo=2,
    ),
}

# constants exactly as printed where they differ from a consistent derivation
PRINTED_VARIANTS: Dict[IneqId, Inequality] = {
    IneqId.THM51_CASE2: Inequality(
        "thm51-case2/printed", "a2",
        _lhs((_NL, 1), ("0.25e5", _Q)), F(1, 2), F(0),
        (_m("6.2872e16", 8, 3), _m("153.61632", 5, 3)),
        (_m("0.25", 6, 4), _m("2.2284", 1, 3)),
        refinable=True,
    ),
    IneqId.SEC6_SMALL_A1: Inequality(
        "sec6-small-a1/printed", "b",
        _lhs((_NL, 1), ("0.5", F(1, 2))), F(1, 4), F(0),
        (_m("8.4034e13", F(9, 2)), _m("0.0153", F(7, 2))),
        (_m(1, 4), _m("0.0000115", 3)),
        domain_lo=K.B_FLOOR + 1,
        domain_hi=10**12,
    ),
}


def entry(ident: IneqId, variant: str = "derived") -> Inequality:
    if variant == "derived":
        return REGISTRY[ident]
    if variant == "printed":
        return PRINTED_VARIANTS.get(ident, REGISTRY[ident])
    raise DomainError(f"unknown variant {variant!r}")


def _decide_positive(build, boundary: int) -> bool:
    verdict = decide(lambda p: (build(p), GuardedReal.exact(0, p)))
    if verdict is Ordering.UNDECIDED:
        raise UndecidedError("sign of a logarithm not decided", boundary=boundary)
    return verdict is Ordering.GREATER


def holds(ineq: Inequality, x: int, k: Fraction = F(1)) -> bool:
    """Guarded truth value of LHS(x) < RHS(x), false if any log is <= 0."""
    k = F(k)
    for idx in range(4):
        if not _decide_positive(lambda p, i=idx: ineq.logs(x, k, p)[i], x):
            return False
    verdict = decide(lambda p: (ineq.lhs(x, k, p), ineq.rhs(x, k, p)))
    if verdict is Ordering.UNDECIDED:
        raise UndecidedError(f"{ineq.ident}: comparison undecided at {ineq.variable}={x}", boundary=x)
    return verdict is Ordering.LESS


def _largest_true(pred, lo: int, hi: int, window: int = 1000) -> int:
    """Largest x in [lo, hi] with pred(x), assuming pred is eventually false.

    Doubling from lo brackets the last true point; bisection closes the
    bracket; then nearby and geometrically spaced points are probed and a
    linear scan over ``window`` values runs if any of them is still true.
    Returns lo - 1 if no probe holds.
    """
    last_true: Optional[int] = None
    first_false: Optional[int] = None
    x = lo
    while x <= hi:
        if pred(x):
            last_true, first_false = x, None
        elif last_true is not None and first_false is None:
            first_false = x
        x = x * 2 if x > 0 else 1
    if last_true is None:
        return lo - 1
    if first_false is None:
        if pred(hi):
            raise DomainError(f"inequality still holds at the search ceiling {hi}")
        first_false = hi
    a, b = last_true, first_false
    while b - a > 1:
        mid = (a + b) // 2
        if pred(mid):
            a = mid
        else:
            b = mid
    probes = [a + i for i in range(1, 33)] + [a + (1 << i) for i in range(6, 24)]
    if any(pred(p) for p in probes if p <= hi):
        best = a
        for cand in range(a + 1, min(hi, a + window) + 1):
            if pred(cand):
                best = cand
        return best
    return a


def max_limit(ineq: Inequality, k: Fraction = F(1), lo: Optional[int] = None,
              hi: Optional[int] = None) -> int:
    k = F(k)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    lo = ineq.domain_lo if lo is None else lo
    hi = ineq.domain_hi if hi is None else hi
    return _largest_true(lambda x: holds(ineq, x, k), lo, hi)


def max_a2_satisfying(ident: IneqId, k: Fraction = F(1),
                      extra: Optional[Mapping[str, object]] = None) -> int:
    """Largest value of the entry's variable for which the inequality holds.

    ``extra`` may carry ``variant`` ("derived" or "printed") and search
    limits ``lo`` / ``hi``.
    """
    extra = dict(extra or {})
    ineq = entry(ident, str(extra.pop("variant", "derived")))
    lo = extra.pop("lo", None)
    hi = extra.pop("hi", None)
    if extra:
        raise DomainError(f"unknown parameters: {sorted(extra)}")
    return max_limit(ineq, k, None if lo is None else int(lo), None if hi is None else int(hi))


def refine_k(bound: int) -> Fraction:
    return max(F(1), F(K.K_REFINE_NUMERATOR, bound)) if bound > 0 else F(1)


def iterate_a2_bound(ident: IneqId, variant: str = "derived", max_iter: int = 64) -> List[int]:
    """Bounds under k = 1, then k = 10^5 / previous bound, until a fixpoint.

    The fixpoint value appears once, so the index of the last element is the
    number of refinements needed to reach it.
    """
    ineq = entry(ident, variant)
    if not ineq.refinable:
        raise DomainError(f"{ineq.ident} has no k-refinement")
    seq: List[int] = []
    k = F(1)
    for _ in range(max_iter):
        bound = max_limit(ineq, k)
        if seq and bound == seq[-1]:
            break
        seq.append(bound)
        k = refine_k(bound)
    return seq


def refinable_ids() -> Sequence[IneqId]:
    return [i for i, e in REGISTRY.items() if e.refinable]
