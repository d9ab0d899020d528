"""Closed-form bounds for the indices m, n and for the elements b, c."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from ..errors import DomainError, HypothesisError, UndecidedError
from ..numerics import GuardedReal, Ordering, _mpf_to_fraction, decide, get_start_precision, is_perfect_square
from . import constants as K

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class BoundParams:
    """Symbols shared by the bound inequalities.

    ``a1_prime`` and ``N`` are derived; passing them explicitly is allowed
    but they must agree with a1, a2 and c.
    """

    a1: int
    a2: int
    b: int
    c: int
    k: Fraction = Fraction(1)
    epsilon: Fraction = Fraction(1)
    a1_prime: Optional[int] = None
    N: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.a1 < self.a2:
            raise DomainError(f"need 0 < a1 < a2, got ({self.a1}, {self.a2})")
        if self.b <= 0 or self.c <= 0:
            raise DomainError("b and c must be positive")
        object.__setattr__(self, "k", Fraction(self.k))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        if not 1 <= self.epsilon < 12:
            raise DomainError(f"epsilon must lie in [1, 12), got {self.epsilon}")
        ap = max(4 * (self.a2 - self.a1), 4 * self.a1)
        n = self.a1 * self.a2 * self.c
        if self.a1_prime is not None and self.a1_prime != ap:
            raise DomainError(f"a1_prime={self.a1_prime} inconsistent with a1, a2 (expected {ap})")
        if self.N is not None and self.N != n:
            raise DomainError(f"N={self.N} inconsistent with a1*a2*c={n}")
        object.__setattr__(self, "a1_prime", ap)
        object.__setattr__(self, "N", n)

    def with_c(self, c: int) -> "BoundParams":
        return BoundParams(self.a1, self.a2, self.b, c, self.k, self.epsilon)


def _g(value: Rational, prec: int) -> GuardedReal:
    return GuardedReal.exact(value, prec)


def _prec(prec: Optional[int]) -> int:
    return prec or get_start_precision()


def _positive(x: GuardedReal, what: str) -> GuardedReal:
    if not x.is_positive():
        raise DomainError(f"{what} must be positive (enclosure {x!r})")
    return x


# -- simultaneous approximation ------------------------------------------


def rickert_hypotheses(p: BoundParams) -> bool:
    a1, a2, ap, N = p.a1, p.a2, p.a1_prime, p.N
    if not (0 < a1 <= a2 - 2 and a2 >= 3):
        return False
    if N % (a1 * a2):
        return False
    return N >= K.RICKERT_N_FACTOR * ap * a2 * a2 * (a2 - a1) ** 2


@dataclass(frozen=True)
class LambdaResult:
    value: GuardedReal
    # theta_i = sqrt(radicand_i); kept exact for reporting
    theta1_radicand: Fraction = field(default=Fraction(0))
    theta2_radicand: Fraction = field(default=Fraction(0))

    @property
    def theta1_def(self) -> str:
        return f"sqrt(1 + 4*a2/N) = sqrt({self.theta1_radicand})"

    @property
    def theta2_def(self) -> str:
        return f"sqrt(1 + 4*a1/N) = sqrt({self.theta2_radicand})"


def _lambda_enclosure(p: BoundParams, prec: int) -> GuardedReal:
    a1, a2, ap, N = p.a1, p.a2, p.a1_prime, p.N
    num = _g(K.LAMBDA_NUM * ap * a2 * N / a1, prec).log()
    den = _g(K.LAMBDA_DEN * Fraction(N * N, a1 * a2 * (a2 - a1) ** 2), prec).log()
    return 1 + num / _positive(den, "lambda denominator log")


def lambda_value(p: BoundParams, prec: Optional[int] = None) -> LambdaResult:
    if not rickert_hypotheses(p):
        raise HypothesisError("approximation theorem hypotheses", f"a1={p.a1}, a2={p.a2}, c={p.c}")
    prec = _prec(prec)
    lam = _lambda_enclosure(p, prec)
    verdict = decide(lambda q: (_lambda_enclosure(p, q), _g(2, q)), start=prec)
    if verdict is Ordering.UNDECIDED:
        raise UndecidedError("lambda < 2 not decided", boundary=p.c)
    if verdict is not Ordering.LESS:
        raise AssertionError(f"lambda >= 2 under the hypotheses: {lam!r}")
    return LambdaResult(lam, 1 + Fraction(4 * p.a2, p.N), 1 + Fraction(4 * p.a1, p.N))


# -- bounds on n and m ------------------------------------------------------


def _log_args(p: BoundParams, c: Rational):
    a1, a2, ap = p.a1, p.a2, p.a1_prime
    d = a2 - a1
    # (mantissa, square-rooted mantissa) pairs: arg = rat * sqrt(root)
    first = (K.NU_LOG1 * a2 * a2 * c, a1 * ap)
    second = (K.NU_LOG2 * Fraction(c, d), a1 * a2)
    third = p.b * c
    fourth = K.NU_LOG4 * Fraction(a1 * c, ap * a2 * d * d)
    return first, second, third, fourth


def _phi_enclosure(p: BoundParams, c: Rational, prec: int) -> GuardedReal:
    (r1, q1), (r2, q2), third, fourth = _log_args(p, c)
    l1 = (_g(r1, prec) * _g(q1, prec).sqrt()).log()
    l2 = (_g(r2, prec) * _g(q2, prec).sqrt()).log()
    l3 = _g(third, prec).log()
    l4 = _g(fourth, prec).log()
    for val, name in ((l1, "first"), (l2, "second"), (l3, "log(bc)"), (l4, "fourth")):
        _positive(val, f"{name} logarithm of the n upper bound")
    return K.NU_FACTOR * l1 * l2 / (l3 * l4)


def phi(c: int, p: BoundParams, prec: Optional[int] = None) -> GuardedReal:
    """The n upper bound as a function of c with a1, a2, b fixed."""
    if c <= 0:
        raise DomainError("c must be positive")
    return _phi_enclosure(p, c, _prec(prec))


def phi_decreasing_threshold(p: BoundParams) -> Fraction:
    return Fraction(p.a1_prime * p.a2 * (p.a2 - p.a1) ** 2, p.a1) / K.NU_LOG4


def phi_decreasing_condition(p: BoundParams) -> bool:
    """True if c exceeds the threshold past which phi decreases."""
    return p.c > phi_decreasing_threshold(p)


def n_upper(p: BoundParams, prec: Optional[int] = None) -> GuardedReal:
    if not rickert_hypotheses(p):
        raise HypothesisError("approximation theorem hypotheses", f"a1={p.a1}, a2={p.a2}, c={p.c}")
    if not p.c > K.GROWTH_C_FACTOR * p.a2 * p.b**3:
        raise HypothesisError("c > 4.1e-5 * a2 * b^3", f"c={p.c}, b={p.b}")
    if not p.b > K.B_FLOOR:
        raise HypothesisError("b > 10^5", f"b={p.b}")
    return _phi_enclosure(p, p.c, _prec(prec))


class Parity(enum.Enum):
    ODD = "odd"
    EVEN = "even"


def n_lower(b: int, c: int, parity: Parity, a2: int, prec: Optional[int] = None) -> GuardedReal:
    if not b > K.B_FLOOR:
        raise HypothesisError("b > 10^5", f"b={b}")
    if not c > K.NL_C_CUBE * b**3:
        raise HypothesisError("c > 0.56 * b^3", f"b={b}, c={c}")
    if not c > K.NL_C_SQUARE * a2 * a2 * b * b:
        raise HypothesisError("c > 0.001 * a2^2 * b^2", f"a2={a2}, b={b}, c={c}")
    prec = _prec(prec)
    gc = _g(c, prec)
    inv_sqrt_b = 1 / _g(b, prec).sqrt()
    if parity is Parity.ODD:
        return K.NL_ODD * inv_sqrt_b * gc.sqrt().sqrt()
    return K.NL_EVEN * inv_sqrt_b * gc.sqrt()


def m_upper_epsilon(n: int, epsilon: Rational, prec: Optional[int] = None) -> GuardedReal:
    eps = Fraction(epsilon)
    if not 1 <= eps < 12:
        raise DomainError(f"epsilon must lie in [1, 12), got {eps}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    ratio = (eps + 1) / (K.EPS_SCALE * eps)
    # the expression is rational, so the enclosure is only the rounding of one value
    return _g(ratio * n + K.EPS_SHIFT - K.EPS_SLOPE * ratio, _prec(prec))


def b_upper_lemma31(a1: int, a2: int, prec: Optional[int] = None) -> GuardedReal:
    """Upper bound for b from the n bounds at large b."""
    if not 0 < a1 < a2:
        raise DomainError(f"need 0 < a1 < a2, got ({a1}, {a2})")
    prec = _prec(prec)
    ap = max(4 * (a2 - a1), 4 * a1)
    return _g(K.NU_LOG1 * a2 * a2, prec) * _g(a1 * ap, prec).sqrt()


# -- approximation quality --------------------------------------------------


@dataclass(frozen=True)
class GapResult:
    gap1: GuardedReal
    gap2: GuardedReal
    bound: Fraction
    within_bound: bool


def approximation_gap(a1: int, a2: int, c: int, z: int, x1: int, x2: int,
                      prec: Optional[int] = None) -> GapResult:
    """|theta_i - p_i/q| for q = a1 a2 z, p1 = s1 a2 x1, p2 = s2 a1 x2.

    ``within_bound`` reports whether both gaps are provably below 2c/(a1 z^2);
    small c can fall outside the range where that estimate holds.
    """
    if z <= 0:
        raise DomainError("z must be positive")
    if a1 <= 0 or a2 <= 0 or a1 == a2:
        raise DomainError("a1, a2 must be distinct positive integers")
    if a1 * z * z - c * x1 * x1 != 4 * (a1 - c):
        raise DomainError("(z, x1) does not solve a1 z^2 - c x1^2 = 4(a1 - c)")
    if a2 * z * z - c * x2 * x2 != 4 * (a2 - c):
        raise DomainError("(z, x2) does not solve a2 z^2 - c x2^2 = 4(a2 - c)")
    s1 = is_perfect_square(a1 * c + 4)
    s2 = is_perfect_square(a2 * c + 4)
    if s1 is None or s2 is None:
        raise DomainError("a1 c + 4 and a2 c + 4 must both be squares")
    N = a1 * a2 * c
    q = a1 * a2 * z
    bound = Fraction(2 * c, a1 * z * z)

    def gaps(prec: int):
        t1 = _g(1 + Fraction(4 * a2, N), prec).sqrt()
        t2 = _g(1 + Fraction(4 * a1, N), prec).sqrt()
        return t1 - Fraction(s1 * a2 * x1, q), t2 - Fraction(s2 * a1 * x2, q)

    prec = _prec(prec)
    g1, g2 = (_abs(g) for g in gaps(prec))
    ok = all(
        decide(lambda pr, i=i: (_abs(gaps(pr)[i]), _g(bound, pr)), start=prec) is Ordering.LESS
        for i in (0, 1)
    )
    return GapResult(g1, g2, bound, ok)


def _abs(x: GuardedReal) -> GuardedReal:
    if x.is_positive():
        return x
    if (-x).is_positive():
        return -x
    # straddles zero: [0, max(|lo|, |hi|)]
    lo, hi = (_mpf_to_fraction(v) for v in x._iv)
    return GuardedReal.from_bounds(0, max(-lo, hi), x.precision)
