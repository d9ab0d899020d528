"""Per-pair search for b < c with {a1, b, c} and {a2, b, c} both D(4)-triples.

Both b and c are values v with a1 v + 4 and a2 v + 4 square, so they come
from :func:`pair_extension_values`; the remaining condition is bc + 4 square.
"""
from __future__ import annotations

import datetime as _dt
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..errors import DomainError, UndecidedError
from ..numerics import GuardedReal, Ordering, decide, is_perfect_square
from ..pell import pair_extension_values
from ..bounds import constants as K
from ..bounds.lemmas import b_upper_lemma31
from ..bounds.registry import _largest_true
from .config import BCeilingRule, CampaignConfig, CWindowRule

log = logging.getLogger(__name__)

_INT_FIELDS = ("a1", "a2", "b", "c", "r1", "r2", "s1", "s2", "t")


@dataclass(frozen=True)
class HitRecord:
    a1: int
    a2: int
    b: int
    c: int
    r1: int
    r2: int
    s1: int
    s2: int
    t: int
    config_digest: str = ""
    ts: str = ""

    def key(self) -> Tuple[int, int, int, int]:
        return (self.a1, self.a2, self.b, self.c)

    def verify(self) -> bool:
        """Recheck all five witness squares independently."""
        checks = (
            (self.a1 * self.b + 4, self.r1),
            (self.a2 * self.b + 4, self.r2),
            (self.a1 * self.c + 4, self.s1),
            (self.a2 * self.c + 4, self.s2),
            (self.b * self.c + 4, self.t),
        )
        return all(is_perfect_square(v) == w for v, w in checks)

    def to_json(self) -> Dict[str, str]:
        out = {name: str(getattr(self, name)) for name in _INT_FIELDS}
        out["config_digest"] = self.config_digest
        out["ts"] = self.ts
        return out

    @classmethod
    def from_json(cls, obj: Dict[str, str]) -> "HitRecord":
        ints = {name: int(obj[name]) for name in _INT_FIELDS}
        return cls(**ints, config_digest=obj.get("config_digest", ""), ts=obj.get("ts", ""))


@dataclass
class PairResult:
    a1: int
    a2: int
    hits: List[HitRecord] = field(default_factory=list)
    b_ceiling: Optional[int] = None
    last_b: Optional[int] = None
    b_tested: int = 0
    c_tested: int = 0
    pruned: Optional[str] = None


def prune_reason(a1: int, a2: int) -> Optional[str]:
    """Pairs excluded before any search, with the reason logged."""
    if a2 - a1 < 2:
        if a1 == 3:
            return "a2 = a1 + 1 = 4 would give a D(4)-quintuple {3, 4, b, c, d}"
        return "a2 = a1 + 1 is impossible for a1 != 3"
    return None


def b_ceiling_from_n_bounds(a1: int, a2: int, b_floor: int, cap: int) -> int:
    """Largest b not excluded by comparing the two bounds for n with c = 0.25 a1^2 b^3."""

    def compatible(b: int) -> bool:
        c = Fraction(a1 * a1 * b**3, 4)
        ap = max(4 * (a2 - a1), 4 * a1)
        d = a2 - a1

        def build(prec):
            g = GuardedReal.exact
            lower = K.NL_ODD * (g(c, prec) / (b * b)).sqrt().sqrt()
            l1 = (g(K.NU_LOG1 * a2 * a2 * c, prec) * g(a1 * ap, prec).sqrt()).log()
            l2 = (g(K.NU_LOG2 * c / d, prec) * g(a1 * a2, prec).sqrt()).log()
            l3 = g(b * c, prec).log()
            l4 = g(K.NU_LOG4 * a1 * c / (ap * a2 * d * d), prec).log()
            return lower, (l1, l2, l3, l4)

        _, logs = build(128)
        if not all(v.is_positive() for v in logs):
            return True  # bound not applicable; keep b
        verdict = decide(lambda p: (build(p)[0], _upper(build(p)[1])))
        if verdict is Ordering.UNDECIDED:
            raise UndecidedError("b ceiling comparison undecided", boundary=b)
        return verdict is Ordering.LESS

    if compatible(cap):
        return cap
    return max(b_floor - 1, _largest_true(compatible, b_floor, cap))


def _upper(logs):
    l1, l2, l3, l4 = logs
    return K.NU_FACTOR * l1 * l2 / (l3 * l4)


def b_ceiling(a1: int, a2: int, cfg: CampaignConfig) -> int:
    rule = cfg.b_ceiling_rule
    if rule is BCeilingRule.FIXED:
        raw = cfg.b_ceiling_value
    elif rule is BCeilingRule.LEMMA31:
        bound = b_upper_lemma31(a1, a2)
        raw = int(bound.hi)  # b < bound, b integral
    else:
        raw = b_ceiling_from_n_bounds(a1, a2, cfg.b_floor, cfg.b_ceiling_cap)
    return min(raw, cfg.b_ceiling_cap)


def c_window(a1: int, a2: int, b: int, cfg: CampaignConfig) -> Tuple[int, int]:
    """Closed integer window [lo, hi] for c."""
    rule = cfg.c_window_rule
    if rule is CWindowRule.EXPLICIT:
        lo, hi = cfg.c_window
        return max(lo, b + 1), hi
    if rule is CWindowRule.NONE:
        return b + 1, cfg.c_none_cap
    # strict inequalities 0.25 a1^2 b^3 < c < upper
    lo = (a1 * a1 * b**3) // 4 + 1
    upper_b4 = K.C_CEILING_B4 * b**4
    if rule is CWindowRule.STANDARD:
        num = a2 * a2 * b**3
        upper_a2 = num // 4 if num % 4 else num // 4 - 1
        hi = min(upper_a2, upper_b4 - 1)
    else:
        hi = upper_b4 - 1
    return max(lo, b + 1), hi


def search_pair_detailed(a1: int, a2: int, cfg: CampaignConfig, digest: str = "") -> PairResult:
    if not 0 < a1 < a2:
        raise DomainError(f"need 0 < a1 < a2, got ({a1}, {a2})")
    res = PairResult(a1, a2)
    reason = prune_reason(a1, a2)
    if reason:
        res.pruned = reason
        log.info("pair (%d, %d) pruned: %s", a1, a2, reason)
        return res
    ceiling = b_ceiling(a1, a2, cfg)
    res.b_ceiling = ceiling
    if ceiling < cfg.b_floor:
        res.pruned = f"empty b window [{cfg.b_floor}, {ceiling}]"
        log.info("pair (%d, %d) pruned: %s", a1, a2, res.pruned)
        return res
    bs = pair_extension_values(a1, a2, cfg.b_floor, ceiling)
    windows = []
    for b, _r1, _r2 in bs:
        lo, hi = c_window(a1, a2, b, cfg)
        if lo > hi:
            log.info("pair (%d, %d), b=%d skipped: empty c window [%d, %d]", a1, a2, b, lo, hi)
            continue
        windows.append((b, lo, hi))
    res.b_tested = len(bs)
    res.last_b = bs[-1][0] if bs else None
    if not windows:
        if bs:
            res.pruned = "every c window degenerate"
        return res
    # one enumeration covers every window of this pair
    c_lo = min(w[1] for w in windows)
    c_hi = max(w[2] for w in windows)
    cs = pair_extension_values(a1, a2, c_lo, c_hi)
    witnesses = {b: (r1, r2) for b, r1, r2 in bs}
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    for b, lo, hi in windows:
        for c, s1, s2 in cs:
            if c < lo or c > hi:
                continue
            res.c_tested += 1
            t = is_perfect_square(b * c + 4)
            if t is None:
                continue
            r1, r2 = witnesses[b]
            hit = HitRecord(a1, a2, b, c, r1, r2, s1, s2, t, digest, stamp)
            assert hit.verify()
            res.hits.append(hit)
    res.hits.sort(key=HitRecord.key)
    return res


def search_pair(a1: int, a2: int, cfg: CampaignConfig) -> List[HitRecord]:
    return search_pair_detailed(a1, a2, cfg, cfg.digest()).hits
