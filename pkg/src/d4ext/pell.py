"""Generalized Pell equations x^2 - D y^2 = N over the integers.

Nonsquare D goes through continued fractions: :func:`fundamental_unit` finds the
minimal unit, :func:`solution_classes` finds one minimal representative per
class, and :func:`enumerate_solutions` walks every class orbit.  Square D
factors as a difference of squares with finitely many solutions
(:func:`solve_square_D`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .errors import DomainError
from .numerics import is_perfect_square, isqrt

# brute force over y is used for class representatives while the classical
# bound stays below this; larger bounds switch to the LMM reduction
BRUTE_FORCE_LIMIT = 1 << 16


@dataclass(frozen=True)
class PellProblem:
    D: int
    N: int

    def __post_init__(self):
        if self.D < 1:
            raise DomainError(f"D must be positive, got {self.D}")
        if self.N == 0:
            raise DomainError("N must be nonzero")

    def holds(self, x: int, y: int) -> bool:
        return x * x - self.D * y * y == self.N


@dataclass(frozen=True)
class FundamentalUnit:
    x1: int
    y1: int


@dataclass(frozen=True)
class PellClass:
    x0: int
    y0: int


def _require_nonsquare(D: int) -> None:
    if D < 2 or is_perfect_square(D) is not None:
        raise DomainError(f"D={D} is a perfect square; use solve_square_D")


def _sqrt_convergents(D: int) -> Iterator[Tuple[int, int]]:
    """Convergents p/q of sqrt(D) from the (P, Q) recursion."""
    a0 = isqrt(D)
    P, Q = 0, 1
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    yield p, q
    a = a0
    while True:
        P = a * Q - P
        Q = (D - P * P) // Q
        a = (a0 + P) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def _units(D: int) -> Tuple[FundamentalUnit, Optional[FundamentalUnit]]:
    """Minimal solutions of x^2 - D y^2 = 1 and (if solvable) = -1."""
    negative = None
    for p, q in _sqrt_convergents(D):
        norm = p * p - D * q * q
        if norm == -1 and negative is None:
            negative = FundamentalUnit(p, q)
        elif norm == 1:
            return FundamentalUnit(p, q), negative
    raise AssertionError("unreachable")


def fundamental_unit(D: int) -> FundamentalUnit:
    """Minimal positive solution of x^2 - D y^2 = 1."""
    _require_nonsquare(D)
    return _units(D)[0]


def _mul(x: int, y: int, u: int, v: int, D: int) -> Tuple[int, int]:
    return x * u + D * y * v, x * v + y * u


def _equivalent(a: Tuple[int, int], b: Tuple[int, int], D: int, N: int) -> bool:
    """Same class: (x + y sqrt D)/(x' + y' sqrt D) is a unit, up to sign."""
    (x, y), (u, v) = a, b
    n = abs(N)
    return (x * u - D * y * v) % n == 0 and (x * v - y * u) % n == 0


def _canonical(x: int, y: int, D: int, unit: FundamentalUnit) -> Tuple[int, int]:
    """Minimal-|y| element of the orbit of (x, y), normalized to y >= 0, x >= 0 on ties."""
    x1, y1 = unit.x1, unit.y1
    while True:
        up = _mul(x, y, x1, y1, D)
        down = _mul(x, y, x1, -y1, D)
        if abs(up[1]) < abs(y):
            x, y = up
        elif abs(down[1]) < abs(y):
            x, y = down
        else:
            break
    candidates = [(x, y), _mul(x, y, x1, y1, D), _mul(x, y, x1, -y1, D)]
    best_y = min(abs(c[1]) for c in candidates)
    normalized = []
    for cx, cy in candidates:
        if abs(cy) != best_y:
            continue
        if cy < 0 or (cy == 0 and cx < 0):
            cx, cy = -cx, -cy
        normalized.append((cx, cy))
    # prefer nonnegative x, then the smaller |x|
    return min(normalized, key=lambda s: (s[0] < 0, abs(s[0])))


def _representative_bound(D: int, N: int, unit: FundamentalUnit) -> int:
    # ceil(sqrt(|N| (x1 + 1) / (2D))) covers both signs of N
    num = abs(N) * (unit.x1 + 1)
    den = 2 * D
    r = isqrt(num // den)
    while r * r * den < num:
        r += 1
    return r


def _brute_force_solutions(D: int, N: int, y_bound: int) -> List[Tuple[int, int]]:
    found = []
    for y in range(y_bound + 1):
        x = is_perfect_square(N + D * y * y)
        if x is None:
            continue
        found.append((x, y))
        if x:
            found.append((-x, y))
    return found


def _pqa(P0: int, Q0: int, D: int) -> Iterator[Tuple[int, int, int, int, int]]:
    """PQa continued-fraction recursion for (P0 + sqrt D)/Q0.

    Yields (i, P_i, Q_i, G_{i-1}, B_{i-1}) with
    G_{i-1}^2 - D B_{i-1}^2 = (-1)^i Q_i Q0.
    """
    s = isqrt(D)
    G_prev2, G_prev = -P0, Q0
    B_prev2, B_prev = 1, 0
    P, Q = P0, Q0
    i = 0
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = -((P + s) // (-Q)) - 1
        G_prev2, G_prev = G_prev, a * G_prev + G_prev2
        B_prev2, B_prev = B_prev, a * B_prev + B_prev2
        P = a * Q - P
        Q = (D - P * P) // Q
        i += 1
        yield i, P, Q, G_prev, B_prev


def _lmm_solutions(D: int, N: int, negative: Optional[FundamentalUnit]) -> List[Tuple[int, int]]:
    """One solution per class via the Lagrange-Matthews-Mollin reduction."""
    out = []
    f = 1
    while f * f <= abs(N):
        if N % (f * f) == 0:
            m = N // (f * f)
            am = abs(m)
            for z in range(-((am - 1) // 2), am // 2 + 1):
                if (z * z - D) % am:
                    continue
                seen = set()
                for _i, P, Q, r, s in _pqa(z, am, D):
                    if abs(Q) == 1:
                        if r * r - D * s * s == m:
                            out.append((f * r, f * s))
                        elif negative is not None:
                            t, u = negative.x1, negative.y1
                            out.append((f * (r * t + s * u * D), f * (r * u + s * t)))
                        break
                    # a repeated state closes the period without Q = +-1
                    if (P, Q) in seen:
                        break
                    seen.add((P, Q))
        f += 1
    return out


def solution_classes(p: PellProblem) -> List[PellClass]:
    """Complete, duplicate-free class representatives of x^2 - D y^2 = N."""
    D, N = p.D, p.N
    _require_nonsquare(D)
    unit, negative = _units(D)
    bound = _representative_bound(D, N, unit)
    if bound <= BRUTE_FORCE_LIMIT:
        raw = _brute_force_solutions(D, N, bound)
    else:
        raw = _lmm_solutions(D, N, negative)
    reps: List[Tuple[int, int]] = []
    for x, y in raw:
        c = _canonical(x, y, D, unit)
        if not any(_equivalent(c, r, D, N) for r in reps):
            reps.append(c)
    reps.sort(key=lambda s: (s[1], s[0]))
    return [PellClass(x, y) for x, y in reps]


def _orbit_points(rep: PellClass, D: int, unit: FundamentalUnit, y_max: int) -> Iterator[Tuple[int, int]]:
    """Orbit elements +-(rep)(unit)^j, j in Z, with 0 <= y <= y_max."""
    for step in (unit.y1, -unit.y1):
        cx, cy = rep.x0, rep.y0
        prev = None
        while True:
            for px, py in ((cx, cy), (-cx, -cy)):
                if 0 <= py <= y_max:
                    yield px, py
            # |y| is convex along the orbit; stop once past y_max and rising
            if abs(cy) > y_max and prev is not None and abs(cy) > prev:
                break
            prev = abs(cy)
            cx, cy = _mul(cx, cy, unit.x1, step, D)


def enumerate_solutions(p: PellProblem, y_max: int) -> List[Tuple[int, int]]:
    """All solutions with x >= 0 and 0 <= y <= y_max, ascending in y."""
    D = p.D
    _require_nonsquare(D)
    if y_max < 0:
        return []
    unit = fundamental_unit(D)
    points = set()
    for rep in solution_classes(p):
        for x, y in _orbit_points(rep, D, unit, y_max):
            if x >= 0:
                points.add((x, y))
    return sorted(points, key=lambda s: (s[1], s[0]))


def solve_square_D(k: int, N: int) -> List[Tuple[int, int]]:
    """Nonnegative solutions of x^2 - (k y)^2 = N via divisor pairs of N."""
    if N == 0:
        raise DomainError("N must be nonzero for a finite solution set")
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    n = abs(N)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            e = n // d
            # x - ky = lo, x + ky = hi, lo * hi = N, hi >= |lo|
            lo, hi = (d, e) if N > 0 else (-d, e)
            if (lo + hi) % 2 == 0:
                x, ky = (lo + hi) // 2, (hi - lo) // 2
                if ky % k == 0:
                    out.add((x, ky // k))
        d += 1
    return sorted(out, key=lambda s: (s[1], s[0]))


def pair_extension_values(a1: int, a2: int, lo: int, hi: int) -> List[Tuple[int, int, int]]:
    """All v in [lo, hi] with a1*v + 4 and a2*v + 4 both squares, as (v, r1, r2).

    Solves (r1 a2)^2 - (a1 a2) r2^2 = 4 a2 (a2 - a1) and keeps solutions with
    a2 | X that give a positive integral v.
    """
    if not 0 < a1 < a2:
        raise DomainError(f"need 0 < a1 < a2, got ({a1}, {a2})")
    lo = max(lo, 1)
    if lo > hi:
        return []
    D = a1 * a2
    N = 4 * a2 * (a2 - a1)
    r2_max = isqrt(a2 * hi + 4)
    k = is_perfect_square(D)
    if k is not None:
        sols = [(x, y) for x, y in solve_square_D(k, N) if y <= r2_max]
    else:
        sols = enumerate_solutions(PellProblem(D, N), r2_max)
    out = []
    for X, r2 in sols:
        if X % a2:
            continue
        r1 = X // a2
        num = r1 * r1 - 4
        if num <= 0 or num % a1:
            continue
        v = num // a1
        if lo <= v <= hi:
            out.append((v, r1, r2))
    out.sort()
    return out
