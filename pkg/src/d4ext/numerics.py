"""Exact integer primitives and outward-rounded interval reals.

Every real-valued comparison in the package goes through :class:`GuardedReal`,
an interval ``[lo, hi]`` whose endpoints are rounded outward at a chosen binary
precision, so ``lo <= true value <= hi`` always holds.  Comparisons that cannot
be decided at one precision are retried at higher precision by :func:`decide`.
"""
from __future__ import annotations

import contextlib
import contextvars
import enum
import math
from fractions import Fraction
from typing import Callable, Iterator, Optional, Tuple, Union

from mpmath import mp, mpf
from mpmath.libmp import from_int, from_rational, round_ceiling, round_floor, to_str
from mpmath.libmp import libmpi as _iv
from mpmath.libmp import mpf_add, mpf_gt, mpf_lt, mpf_shift, mpf_sign, mpf_sub, round_nearest

from .errors import DomainError

DEFAULT_PRECISION = 128
MAX_PRECISION = 4096

_start_precision: contextvars.ContextVar[int] = contextvars.ContextVar(
    "d4ext_start_precision", default=DEFAULT_PRECISION
)

Exact = Union[int, Fraction, str]


def isqrt(n: int) -> int:
    """Return floor(sqrt(n)) for a nonnegative integer."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_perfect_square(n: int) -> Optional[int]:
    """Return the nonnegative root of ``n`` if it is a perfect square, else None."""
    if n < 0:
        return None
    # squares mod 64 reject ~80% of non-squares before the isqrt
    if n & 63 not in _SQUARES_MOD_64:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


_SQUARES_MOD_64 = frozenset((i * i) & 63 for i in range(64))


def to_fraction(value: Exact) -> Fraction:
    """Parse an exact constant; decimal strings become exact rationals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact value: {value!r}")


def get_start_precision() -> int:
    return _start_precision.get()


@contextlib.contextmanager
def precision_context(bits: int) -> Iterator[None]:
    """Set the starting precision used by :func:`decide` within a block."""
    if bits < 16:
        raise DomainError("precision must be at least 16 bits")
    token = _start_precision.set(bits)
    try:
        yield
    finally:
        _start_precision.reset(token)


class GuardedReal:
    """Closed interval with outward-rounded binary endpoints."""

    __slots__ = ("_iv", "precision")

    def __init__(self, iv, precision: int):
        self._iv = iv
        self.precision = precision

    @classmethod
    def exact(cls, value: Exact, precision: int = DEFAULT_PRECISION) -> "GuardedReal":
        q = to_fraction(value)
        if q.denominator == 1:
            n = q.numerator
            iv = (from_int(n, precision, round_floor), from_int(n, precision, round_ceiling))
        else:
            p, d = q.numerator, q.denominator
            iv = (
                from_rational(p, d, precision, round_floor),
                from_rational(p, d, precision, round_ceiling),
            )
        return cls(iv, precision)

    @classmethod
    def from_bounds(cls, lo: Exact, hi: Exact, precision: int = DEFAULT_PRECISION) -> "GuardedReal":
        a = cls.exact(lo, precision)._iv[0]
        b = cls.exact(hi, precision)._iv[1]
        return cls((a, b), precision)

    # -- accessors -----------------------------------------------------
    # make_mpf wraps the endpoint without rounding it to the global mpmath precision
    @property
    def lo(self) -> mpf:
        return mp.make_mpf(self._iv[0])

    @property
    def hi(self) -> mpf:
        return mp.make_mpf(self._iv[1])

    @property
    def width(self) -> mpf:
        return mp.make_mpf(mpf_sub(self._iv[1], self._iv[0], self.precision, round_ceiling))

    def mid(self) -> mpf:
        s = mpf_add(self._iv[0], self._iv[1], self.precision + 1, round_nearest)
        return mp.make_mpf(mpf_shift(s, -1))

    def fraction_bounds(self) -> Tuple[Fraction, Fraction]:
        """The endpoints as exact rationals."""
        return _mpf_to_fraction(self._iv[0]), _mpf_to_fraction(self._iv[1])

    def contains(self, value: Exact) -> bool:
        """Exact membership test for a rational value."""
        lo, hi = self.fraction_bounds()
        return lo <= to_fraction(value) <= hi

    def __float__(self) -> float:
        return float(self.mid())

    def __repr__(self) -> str:
        digits = max(8, int(self.precision * 0.30103) // 4)
        return (
            f"GuardedReal([{to_str(self._iv[0], digits)}, {to_str(self._iv[1], digits)}], "
            f"prec={self.precision})"
        )

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "GuardedReal":
        if isinstance(other, GuardedReal):
            return other
        return GuardedReal.exact(other, self.precision)

    def _prec(self, other: "GuardedReal") -> int:
        return max(self.precision, other.precision)

    def __add__(self, other):
        o = self._coerce(other)
        p = self._prec(o)
        return GuardedReal(_iv.mpi_add(self._iv, o._iv, p), p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        p = self._prec(o)
        return GuardedReal(_iv.mpi_sub(self._iv, o._iv, p), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = self._prec(o)
        return GuardedReal(_iv.mpi_mul(self._iv, o._iv, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if mpf_sign(o._iv[0]) <= 0 <= mpf_sign(o._iv[1]):
            raise DomainError("division by an interval containing zero")
        p = self._prec(o)
        return GuardedReal(_iv.mpi_div(self._iv, o._iv, p), p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return GuardedReal(_iv.mpi_neg(self._iv, self.precision), self.precision)

    def __pow__(self, exponent):
        q = to_fraction(exponent)
        if q.denominator == 1:
            return GuardedReal(_iv.mpi_pow_int(self._iv, q.numerator, self.precision), self.precision)
        if not self.is_positive():
            raise DomainError("fractional power of a non-positive interval")
        base = self
        den = q.denominator
        # powers of two in the denominator go through repeated square roots
        while den % 2 == 0:
            base = base.sqrt()
            den //= 2
        if den == 1:
            return GuardedReal(_iv.mpi_pow_int(base._iv, q.numerator, self.precision), self.precision)
        return (base.log() * Fraction(q.numerator, den)).exp()

    def sqrt(self) -> "GuardedReal":
        if mpf_sign(self._iv[0]) < 0:
            raise DomainError("sqrt of an interval with negative part")
        return GuardedReal(_iv.mpi_sqrt(self._iv, self.precision), self.precision)

    def log(self) -> "GuardedReal":
        if mpf_sign(self._iv[0]) <= 0:
            raise DomainError("log of an interval that is not strictly positive")
        return GuardedReal(_iv.mpi_log(self._iv, self.precision), self.precision)

    def exp(self) -> "GuardedReal":
        return GuardedReal(_iv.mpi_exp(self._iv, self.precision), self.precision)

    def is_positive(self) -> bool:
        return mpf_sign(self._iv[0]) > 0


def _mpf_to_fraction(v) -> Fraction:
    sign, man, exp, _bc = v
    if man == 0:
        return Fraction(0)
    q = Fraction(man) * (Fraction(2) ** exp)
    return -q if sign else q


def log_exact(value: Exact, precision: int = DEFAULT_PRECISION) -> GuardedReal:
    return GuardedReal.exact(value, precision).log()


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    UNDECIDED = "undecided"


def guarded_compare(lhs: GuardedReal, rhs: GuardedReal) -> Ordering:
    """Decide lhs < rhs or lhs > rhs when the enclosures are disjoint."""
    if mpf_lt(lhs._iv[1], rhs._iv[0]):
        return Ordering.LESS
    if mpf_gt(lhs._iv[0], rhs._iv[1]):
        return Ordering.GREATER
    return Ordering.UNDECIDED


def decide(
    build: Callable[[int], Tuple[GuardedReal, GuardedReal]],
    start: Optional[int] = None,
    max_precision: int = MAX_PRECISION,
) -> Ordering:
    """Evaluate ``build(prec)`` at doubling precision until the comparison is decided.

    Returns ``Ordering.UNDECIDED`` if ``max_precision`` is reached without a verdict.
    """
    prec = start or get_start_precision()
    while True:
        lhs, rhs = build(prec)
        verdict = guarded_compare(lhs, rhs)
        if verdict is not Ordering.UNDECIDED or prec >= max_precision:
            return verdict
        prec = min(2 * prec, max_precision)
