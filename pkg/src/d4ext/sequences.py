"""The v/w recurrences whose common values z give extensions d with cd + 4 = z^2.

For a D(4)-triple (a, b, c) with r^2 = ab+4, s^2 = ac+4, t^2 = bc+4:

    v_0 = z0, v_1 = (s z0 + c x0)/2, v_{m+2} = s v_{m+1} - v_m
    w_0 = z1, w_1 = (t z1 + c y1)/2, w_{n+2} = t w_{n+1} - w_n

Here ``a`` is whichever small element is under test; the same code serves
both a1 and a2.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .errors import DomainError
from .tuples import TripleContext


class Kind(enum.Enum):
    V = "v"
    W = "w"


class CaseId(enum.Enum):
    EVEN_EVEN = "even-even"
    ODD_ODD = "odd-odd"


@dataclass(frozen=True)
class RecurrenceSpec:
    coeff: int
    z0: int
    first: int
    kind: Kind

    @classmethod
    def from_initial(cls, kind: Kind, coeff: int, z0: int, c: int, x0: int) -> "RecurrenceSpec":
        """Build from (z0, x0); rejects initial data whose half-sum is not integral."""
        twice = coeff * z0 + c * x0
        if twice % 2:
            raise DomainError(f"first term ({coeff}*{z0} + {c}*{x0})/2 is not integral")
        return cls(coeff, z0, twice // 2, kind)


def iter_sequence(spec: RecurrenceSpec) -> Iterator[int]:
    prev, cur = spec.z0, spec.first
    yield prev
    while True:
        yield cur
        prev, cur = cur, spec.coeff * cur - prev


def build_sequence(spec: RecurrenceSpec, count: int) -> List[int]:
    if count < 1:
        raise DomainError("count must be at least 1")
    out = []
    for term in iter_sequence(spec):
        out.append(term)
        if len(out) == count:
            return out
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class InitCase:
    case_id: CaseId
    z0: int
    z1: int
    x0: int
    y1: int

    def v_spec(self, ctx: TripleContext) -> RecurrenceSpec:
        return RecurrenceSpec.from_initial(Kind.V, ctx.s, self.z0, ctx.c, self.x0)

    def w_spec(self, ctx: TripleContext) -> RecurrenceSpec:
        return RecurrenceSpec.from_initial(Kind.W, ctx.t, self.z1, ctx.c, self.y1)


def _context(a: int, b: int, c: int) -> TripleContext:
    if not a < b < c:
        raise DomainError(f"need a < b < c, got ({a}, {b}, {c})")
    return TripleContext.of(a, b, c)


def admissible_inits(a: int, b: int, c: int) -> List[InitCase]:
    """Both sign choices of each parity case."""
    ctx = _context(a, b, c)
    cases = []
    for sign in (1, -1):
        cases.append(InitCase(CaseId.EVEN_EVEN, 2 * sign, 2 * sign, 2, 2))
    for sign in (1, -1):
        cases.append(InitCase(CaseId.ODD_ODD, ctx.t * sign, ctx.s * sign, ctx.r, ctx.r))
    return cases


def _indexed(spec: RecurrenceSpec, limit: int, parity: int) -> Iterator[Tuple[int, int]]:
    for idx, term in enumerate(iter_sequence(spec)):
        if idx > limit:
            return
        if idx % 2 == parity:
            yield term, idx


def find_intersections(a: int, b: int, c: int, m_max: int, n_max: int) -> List[Tuple[int, int, int, int]]:
    """All (m, n, z, d) with v_m = w_n = z > 0, m = n mod 2, and d = (z^2-4)/c a new element.

    z = 2 (d = 0) and d already in the triple are dropped; they are solutions
    of the system but not extensions.
    """
    if m_max < 0 or n_max < 0:
        raise DomainError("index bounds must be nonnegative")
    ctx = _context(a, b, c)
    found = set()
    for case in admissible_inits(a, b, c):
        try:
            vs, ws = case.v_spec(ctx), case.w_spec(ctx)
        except DomainError:
            continue
        parity = 0 if case.case_id is CaseId.EVEN_EVEN else 1
        # positive terms only; both streams increase once positive
        v_terms = sorted((z, m) for z, m in _indexed(vs, m_max, parity) if z > 0)
        w_terms = sorted((z, n) for z, n in _indexed(ws, n_max, parity) if z > 0)
        i = j = 0
        while i < len(v_terms) and j < len(w_terms):
            zv, zw = v_terms[i][0], w_terms[j][0]
            if zv < zw:
                i += 1
            elif zv > zw:
                j += 1
            else:
                # equal runs: pair every v index with every w index
                i_end, j_end = i, j
                while i_end < len(v_terms) and v_terms[i_end][0] == zv:
                    i_end += 1
                while j_end < len(w_terms) and w_terms[j_end][0] == zv:
                    j_end += 1
                num = zv * zv - 4
                if num > 0 and num % c == 0:
                    d = num // c
                    if d not in (ctx.a, ctx.b, ctx.c):
                        for _, m in v_terms[i:i_end]:
                            for _, n in w_terms[j:j_end]:
                                found.add((m, n, zv, d))
                i, j = i_end, j_end
    return sorted(found)
