"""D(n)-tuples, the d+/d- extensions of a D(4)-triple, and regularity."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Tuple

from .errors import DomainError
from .numerics import is_perfect_square


@dataclass(frozen=True)
class DTuple:
    n: int
    elements: Tuple[int, ...]


@dataclass(frozen=True)
class TupleCheck:
    """Outcome of :func:`verify_tuple`; truthy iff the tuple is valid."""

    valid: bool
    witnesses: Dict[Tuple[int, int], int] = field(default_factory=dict)
    failing_pair: Tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.valid


def _normalize(candidate: Iterable[int]) -> List[int]:
    items = [int(v) for v in candidate]
    if any(v <= 0 for v in items):
        raise DomainError(f"elements must be positive: {items}")
    if len(set(items)) != len(items):
        raise DomainError(f"elements must be distinct: {items}")
    return sorted(items)


def verify_tuple(candidate: Iterable[int], n: int) -> TupleCheck:
    """Check that e_i * e_j + n is a square for every pair.

    On success the witness map sends each sorted pair to its square root.
    """
    if n == 0:
        raise DomainError("n must be nonzero")
    items = _normalize(candidate)
    roots: Dict[Tuple[int, int], int] = {}
    for x, y in combinations(items, 2):
        r = is_perfect_square(x * y + n)
        if r is None:
            return TupleCheck(False, {}, (x, y))
        roots[(x, y)] = r
    return TupleCheck(True, roots)


def as_dtuple(candidate: Iterable[int], n: int) -> DTuple:
    if not verify_tuple(candidate, n):
        raise DomainError(f"not a D({n})-tuple: {sorted(candidate)}")
    return DTuple(n, tuple(_normalize(candidate)))


@dataclass(frozen=True)
class TripleContext:
    """A D(4)-triple a < b < c with witnesses r^2 = ab+4, s^2 = ac+4, t^2 = bc+4."""

    a: int
    b: int
    c: int
    r: int
    s: int
    t: int

    @classmethod
    def of(cls, a: int, b: int, c: int) -> "TripleContext":
        x, y, z = _normalize((a, b, c))
        r = is_perfect_square(x * y + 4)
        s = is_perfect_square(x * z + 4)
        t = is_perfect_square(y * z + 4)
        if r is None or s is None or t is None:
            raise DomainError(f"({x}, {y}, {z}) is not a D(4)-triple")
        return cls(x, y, z, r, s, t)


def _ctx(triple) -> TripleContext:
    if isinstance(triple, TripleContext):
        return triple
    return TripleContext.of(*triple)


def d_plus(triple) -> int:
    """a + b + c + (abc + rst)/2."""
    t = _ctx(triple)
    num = t.a * t.b * t.c + t.r * t.s * t.t
    assert num % 2 == 0
    return t.a + t.b + t.c + num // 2


def d_minus(triple) -> int:
    """a + b + c + (abc - rst)/2; zero exactly when c = a + b + 2r."""
    t = _ctx(triple)
    num = t.a * t.b * t.c - t.r * t.s * t.t
    assert num % 2 == 0
    value = t.a + t.b + t.c + num // 2
    assert value >= 0
    return value


@dataclass(frozen=True)
class QuadrupleWitness:
    x: int
    y: int
    z: int


def quadruple_witness(triple, d: int) -> QuadrupleWitness:
    """Roots of ad+4, bd+4, cd+4 for an extension d of the triple."""
    t = _ctx(triple)
    roots = [is_perfect_square(e * d + 4) for e in (t.a, t.b, t.c)]
    if d <= 0 or any(v is None for v in roots):
        raise DomainError(f"{d} does not extend ({t.a}, {t.b}, {t.c})")
    return QuadrupleWitness(*roots)


class QuadrupleKind(enum.Enum):
    REGULAR = "regular"
    IRREGULAR = "irregular"


def classify_quadruple(a: int, b: int, c: int, d: int) -> QuadrupleKind:
    """Regular iff the largest element is d+ of the other three."""
    items = _normalize((a, b, c, d))
    if not verify_tuple(items, 4):
        raise DomainError(f"not a D(4)-quadruple: {items}")
    w, x, y, z = items
    return QuadrupleKind.REGULAR if d_plus((w, x, y)) == z else QuadrupleKind.IRREGULAR
