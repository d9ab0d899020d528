"""Campaign configuration: a flat ``key = value`` text format with a stable digest.

Keys match the :class:`CampaignConfig` fields::

    pair_source    = rule:a2_max=50;ratio_max=2        | explicit:2/5,3/7
    b_floor        = 100001
    b_ceiling_rule = lemma31 | fixed:<int> | per-pair-from-ineq
    b_ceiling_cap  = 10000000000
    c_window_rule  = standard | case1 | explicit:<lo>,<hi> | none
    c_none_cap     = 10^40
    worker_count   = 4
    checkpoint_path = run.ckpt
    output_path    = hits.jsonl

``worker_count`` and the two paths do not enter the digest, so a run can be
resumed with a different worker count or from a moved directory.
"""
from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from ..errors import DomainError

Pair = Tuple[int, int]

DEFAULT_B_FLOOR = 10**5 + 1
DEFAULT_B_CAP = 10**10
DEFAULT_C_NONE_CAP = 10**40


class BCeilingRule(enum.Enum):
    LEMMA31 = "lemma31"
    FIXED = "fixed"
    PER_PAIR_FROM_INEQ = "per-pair-from-ineq"


class CWindowRule(enum.Enum):
    # 0.25 a1^2 b^3 < c < min(0.25 a2^2 b^3, 39247 b^4)
    STANDARD = "standard"
    # 0.25 a1^2 b^3 < c < 39247 b^4
    CASE1 = "case1"
    EXPLICIT = "explicit"
    # b < c <= c_none_cap
    NONE = "none"


@dataclass(frozen=True)
class PairRule:
    """Pairs a1 < a2 with a2 <= a2_max, a2_min <= a2, and ratio_min*a1 < a2 <= ratio_max*a1."""

    a2_max: int
    a2_min: int = 3
    ratio_max: Optional[Fraction] = None
    ratio_min: Optional[Fraction] = None

    def pairs(self) -> List[Pair]:
        out = []
        for a2 in range(max(self.a2_min, 2), self.a2_max + 1):
            for a1 in range(1, a2):
                if self.ratio_max is not None and a2 > self.ratio_max * a1:
                    continue
                if self.ratio_min is not None and a2 <= self.ratio_min * a1:
                    continue
                out.append((a1, a2))
        return sorted(out)

    def render(self) -> str:
        parts = [f"a2_max={self.a2_max}", f"a2_min={self.a2_min}"]
        if self.ratio_max is not None:
            parts.append(f"ratio_max={self.ratio_max}")
        if self.ratio_min is not None:
            parts.append(f"ratio_min={self.ratio_min}")
        return "rule:" + ";".join(parts)


@dataclass(frozen=True)
class CampaignConfig:
    pair_source: Tuple[Pair, ...] | PairRule
    b_floor: int = DEFAULT_B_FLOOR
    b_ceiling_rule: BCeilingRule = BCeilingRule.LEMMA31
    b_ceiling_value: Optional[int] = None
    b_ceiling_cap: int = DEFAULT_B_CAP
    c_window_rule: CWindowRule = CWindowRule.STANDARD
    c_window: Optional[Tuple[int, int]] = None
    c_none_cap: int = DEFAULT_C_NONE_CAP
    worker_count: int = 1
    checkpoint_path: Optional[str] = None
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.worker_count < 1:
            raise DomainError("worker_count must be positive")
        if self.b_floor < 1:
            raise DomainError("b_floor must be positive")
        if self.b_ceiling_rule is BCeilingRule.FIXED and self.b_ceiling_value is None:
            raise DomainError("fixed b ceiling needs a value")
        if self.c_window_rule is CWindowRule.EXPLICIT:
            if self.c_window is None:
                raise DomainError("explicit c window needs bounds")
        if isinstance(self.pair_source, (list, tuple)):
            pairs = tuple(sorted({(int(a), int(b)) for a, b in self.pair_source}))
            for a1, a2 in pairs:
                if not 0 < a1 < a2:
                    raise DomainError(f"pair ({a1}, {a2}) must satisfy 0 < a1 < a2")
            object.__setattr__(self, "pair_source", pairs)

    def pairs(self) -> List[Pair]:
        if isinstance(self.pair_source, PairRule):
            return self.pair_source.pairs()
        return list(self.pair_source)

    # -- text form ------------------------------------------------------
    def _semantic_items(self) -> List[Tuple[str, str]]:
        if isinstance(self.pair_source, PairRule):
            src = self.pair_source.render()
        else:
            src = "explicit:" + ",".join(f"{a}/{b}" for a, b in self.pair_source)
        if self.b_ceiling_rule is BCeilingRule.FIXED:
            bce = f"fixed:{self.b_ceiling_value}"
        else:
            bce = self.b_ceiling_rule.value
        if self.c_window_rule is CWindowRule.EXPLICIT:
            cw = f"explicit:{self.c_window[0]},{self.c_window[1]}"
        else:
            cw = self.c_window_rule.value
        return [
            ("pair_source", src),
            ("b_floor", str(self.b_floor)),
            ("b_ceiling_rule", bce),
            ("b_ceiling_cap", str(self.b_ceiling_cap)),
            ("c_window_rule", cw),
            ("c_none_cap", str(self.c_none_cap)),
        ]

    def to_text(self) -> str:
        items = self._semantic_items() + [("worker_count", str(self.worker_count))]
        if self.checkpoint_path:
            items.append(("checkpoint_path", self.checkpoint_path))
        if self.output_path:
            items.append(("output_path", self.output_path))
        return "".join(f"{k} = {v}\n" for k, v in items)

    def digest(self) -> str:
        canon = "\n".join(f"{k}={v}" for k, v in self._semantic_items())
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    def with_overrides(self, **kw) -> "CampaignConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _parse_int(text: str) -> int:
    text = text.strip().replace("_", "")
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    if "e" in text.lower():
        frac = Fraction(text)
        if frac.denominator != 1:
            raise DomainError(f"not an integer: {text!r}")
        return int(frac)
    return int(text)


def _parse_pairs(text: str) -> Tuple[Pair, ...]:
    out = []
    for item in filter(None, (p.strip() for p in text.split(","))):
        a, _, b = item.partition("/")
        out.append((int(a), int(b)))
    return tuple(out)


def _parse_rule(text: str) -> PairRule:
    fields: Dict[str, str] = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    if "a2_max" not in fields:
        raise DomainError("pair rule needs a2_max")
    unknown = set(fields) - {"a2_max", "a2_min", "ratio_max", "ratio_min"}
    if unknown:
        raise DomainError(f"unknown pair rule keys: {sorted(unknown)}")
    return PairRule(
        a2_max=int(fields["a2_max"]),
        a2_min=int(fields.get("a2_min", 3)),
        ratio_max=Fraction(fields["ratio_max"]) if "ratio_max" in fields else None,
        ratio_min=Fraction(fields["ratio_min"]) if "ratio_min" in fields else None,
    )


def parse_config(text: str) -> CampaignConfig:
    try:
        return _parse_config(text)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad config value: {exc}") from exc


def _parse_config(text: str) -> CampaignConfig:
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    known = {"pair_source", "b_floor", "b_ceiling_rule", "b_ceiling_cap", "c_window_rule",
             "c_none_cap", "worker_count", "checkpoint_path", "output_path"}
    unknown = set(values) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    if "pair_source" not in values:
        raise DomainError("pair_source is required")
    src = values["pair_source"]
    kind, _, body = src.partition(":")
    if kind == "explicit":
        pair_source = _parse_pairs(body)
    elif kind == "rule":
        pair_source = _parse_rule(body)
    else:
        raise DomainError(f"pair_source must start with explicit: or rule:, got {src!r}")

    kw: Dict[str, object] = {}
    if "b_floor" in values:
        kw["b_floor"] = _parse_int(values["b_floor"])
    if "b_ceiling_rule" in values:
        rule, _, arg = values["b_ceiling_rule"].partition(":")
        kw["b_ceiling_rule"] = BCeilingRule(rule.strip())
        if arg:
            kw["b_ceiling_value"] = _parse_int(arg)
    if "b_ceiling_cap" in values:
        kw["b_ceiling_cap"] = _parse_int(values["b_ceiling_cap"])
    if "c_window_rule" in values:
        rule, _, arg = values["c_window_rule"].partition(":")
        kw["c_window_rule"] = CWindowRule(rule.strip())
        if arg:
            lo, _, hi = arg.partition(",")
            kw["c_window"] = (_parse_int(lo), _parse_int(hi))
    if "c_none_cap" in values:
        kw["c_none_cap"] = _parse_int(values["c_none_cap"])
    if "worker_count" in values:
        kw["worker_count"] = int(values["worker_count"])
    for key in ("checkpoint_path", "output_path"):
        if key in values:
            kw[key] = values[key]
    return CampaignConfig(pair_source=pair_source, **kw)


def load_config(path: str | Path) -> CampaignConfig:
    return parse_config(Path(path).read_text())


def explicit_pairs(pairs: Iterable[Pair]) -> Tuple[Pair, ...]:
    return tuple(sorted(set(pairs)))
