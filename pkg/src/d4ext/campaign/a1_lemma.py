"""Exact check that {1, b, c, d} and {3, b, c, d} cannot both be D(4)-quadruples.

Both b + 4 and 3b + 4 square means b = y^2 - 4 with x^2 - 3y^2 = -8, and the
same for c.  The y-values obey y_{n+2} = 4 y_{n+1} - y_n.  With
0.25 b^3 < c < 2.25 b^3 the index of c is forced to k = 3j + 1, and then
c - 2.25 b^3 > 0, which is the contradiction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from ..errors import DomainError
from ..pell import PellProblem, enumerate_solutions, solve_square_D

_LOWER = Fraction(24, 100)
_UPPER = Fraction(225, 100)


def y_sequence(count: int) -> List[int]:
    """Positive y with x^2 - 3 y^2 = -8, ascending."""
    seeds = [y for _x, y in enumerate_solutions(PellProblem(3, -8), 6)]
    if seeds[:2] != [2, 6]:
        raise AssertionError(f"unexpected seeds {seeds}")
    ys = [2, 6]
    while len(ys) < count:
        ys.append(4 * ys[-1] - ys[-2])
    return ys[:count]


def lucas_l(count: int) -> List[int]:
    """L_n = (2 + sqrt 3)^n + (2 - sqrt 3)^n."""
    out = [2, 4]
    while len(out) < count:
        out.append(4 * out[-1] - out[-2])
    return out[:count]


@dataclass(frozen=True)
class A1Verdict:
    j: int
    k: int
    excess: int  # c - 2.25 b^3 scaled by 4, i.e. 4 y_k^2 - 16 - 9 (y_j^2 - 4)^3
    identity_ok: bool

    @property
    def contradiction(self) -> bool:
        return self.excess > 0 and self.identity_ok


def analysis_a1_equals_1(j_max: int) -> List[Tuple[int, int, bool]]:
    """For each j in [4, j_max]: (j, k, verdict) with k the unique admissible index."""
    return [(v.j, v.k, v.contradiction) for v in analysis_a1_details(j_max)]


def analysis_a1_details(j_max: int) -> List[A1Verdict]:
    if j_max < 4:
        raise DomainError("j_max must be at least 4; j <= 3 is handled by analysis_a1_small_j")
    ys = y_sequence(3 * j_max + 4)
    ls = lucas_l(4 * j_max + 3)
    out = []
    for j in range(4, j_max + 1):
        y6 = ys[j] ** 6
        ks = [k for k in range(len(ys)) if _LOWER * y6 < ys[k] ** 2 < _UPPER * y6]
        if ks != [3 * j + 1]:
            raise AssertionError(f"j={j}: admissible k {ks}, expected [{3 * j + 1}]")
        k = ks[0]
        b = ys[j] ** 2 - 4
        c = ys[k] ** 2 - 4
        excess4 = 4 * c - 9 * b**3
        identity = 4 * (8 * ls[4 * j + 2] - 34 * ls[2 * j + 1] + 56) == excess4
        out.append(A1Verdict(j, k, excess4, identity))
    return out


def analysis_a1_small_j(j_max: int = 3, k_max: int = 12) -> List[Tuple[int, int, List[int]]]:
    """(j, b, c values in the window 0.25 b^3 < c < 2.25 b^3) for 1 <= j <= j_max."""
    ys = y_sequence(max(j_max, k_max) + 1)
    out = []
    for j in range(1, j_max + 1):
        b = ys[j] ** 2 - 4
        inside = [ys[k] ** 2 - 4 for k in range(j + 1, k_max + 1)
                  if Fraction(b**3, 4) < ys[k] ** 2 - 4 < Fraction(9 * b**3, 4)]
        out.append((j, b, inside))
    return out


def four_pair_solutions() -> List[Tuple[int, int]]:
    """(r1, r2) with (2 r1)^2 - r2^2 = 12, from the difference-of-squares solver."""
    return [(x // 2, y) for x, y in solve_square_D(1, 12) if x % 2 == 0]
