"""Campaign driver: pair-level parallelism, checkpointing, spill files, resume.

Each pair is one task.  Workers append the hits of a finished pair to their
own spill file and fsync it before reporting back; the main process is the
only writer of the checkpoint, and marks a pair complete only after that.
On completion (or resume) the spill files are merged, filtered to completed
pairs, deduplicated and written sorted by (a1, a2, b, c).
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from .config import CampaignConfig, Pair
from .search import HitRecord, PairResult, search_pair_detailed

log = logging.getLogger(__name__)

SCHEMA = "1"
_MAGIC = "d4ext-checkpoint"


@dataclass(frozen=True)
class PairEntry:
    a1: int
    a2: int
    status: str  # "searched" or "pruned"
    last_b: Optional[int]
    b_tested: int
    c_tested: int
    hits: int
    reason: str = ""

    def to_line(self) -> str:
        last_b = "-" if self.last_b is None else str(self.last_b)
        return (f"pair\t{self.a1}\t{self.a2}\t{self.status}\tlast_b={last_b}\tb_tested={self.b_tested}"
                f"\tc_tested={self.c_tested}\thits={self.hits}\treason={self.reason}\n")

    @classmethod
    def from_line(cls, line: str) -> "PairEntry":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 9 or parts[0] != "pair":
            raise ValueError(f"malformed checkpoint line: {line!r}")
        kv = dict(p.split("=", 1) for p in parts[4:])
        last_b = None if kv["last_b"] == "-" else int(kv["last_b"])
        return cls(int(parts[1]), int(parts[2]), parts[3], last_b, int(kv["b_tested"]),
                   int(kv["c_tested"]), int(kv["hits"]), kv["reason"])

    @classmethod
    def from_result(cls, res: PairResult) -> "PairEntry":
        status = "pruned" if res.pruned and not res.b_tested else "searched"
        return cls(res.a1, res.a2, status, res.last_b, res.b_tested, res.c_tested, len(res.hits),
                   (res.pruned or "").replace("\t", " ").replace("\n", " "))


class Checkpoint:
    """Append-only text checkpoint bound to a config digest."""

    def __init__(self, path: Path, digest: str):
        self.path = path
        self.digest = digest

    def header(self) -> str:
        return f"{_MAGIC}\nschema={SCHEMA}\ndigest={self.digest}\n"

    def load(self) -> Tuple[Dict[Pair, PairEntry], Optional[str]]:
        """Completed entries, or an empty map plus a warning when unusable."""
        if not self.path.exists():
            return {}, None
        try:
            lines = self.path.read_text().splitlines(keepends=True)
            if len(lines) < 3 or lines[0].strip() != _MAGIC:
                raise ValueError("missing header")
            schema = lines[1].strip().partition("=")[2]
            digest = lines[2].strip().partition("=")[2]
            if schema != SCHEMA:
                return {}, f"checkpoint schema {schema!r} unsupported; starting fresh"
            if digest != self.digest:
                return {}, f"checkpoint digest {digest} does not match config {self.digest}; starting fresh"
            entries = {}
            for line in lines[3:]:
                if not line.endswith("\n"):
                    # torn final line from an interrupted write
                    break
                e = PairEntry.from_line(line)
                entries[(e.a1, e.a2)] = e
            return entries, None
        except (OSError, ValueError, KeyError) as exc:
            return {}, f"unreadable checkpoint {self.path}: {exc}; starting fresh"

    def reset(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(self.header())
        os.replace(tmp, self.path)

    def append(self, entry: PairEntry) -> None:
        with open(self.path, "a") as fh:
            fh.write(entry.to_line())
            fh.flush()
            os.fsync(fh.fileno())


@dataclass
class CampaignReport:
    digest: str
    pairs_total: int = 0
    pairs_completed: int = 0
    pairs_processed: int = 0  # in this invocation
    pairs_pruned: int = 0
    b_candidates: int = 0
    c_candidates: int = 0
    hits: List[HitRecord] = field(default_factory=list)
    prune_reasons: Dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0
    complete: bool = False
    resumed: bool = False
    warnings: List[str] = field(default_factory=list)

    def deterministic(self) -> Dict[str, object]:
        """Fields that must not depend on workers, timing or interruptions."""
        return {
            "digest": self.digest,
            "pairs_total": self.pairs_total,
            "pairs_completed": self.pairs_completed,
            "pairs_pruned": self.pairs_pruned,
            "b_candidates": self.b_candidates,
            "c_candidates": self.c_candidates,
            "hits": [h.key() for h in self.hits],
            "prune_reasons": dict(sorted(self.prune_reasons.items())),
            "complete": self.complete,
        }

    def to_json(self) -> Dict[str, object]:
        out = asdict(self)
        out["hits"] = [h.to_json() for h in self.hits]
        return out

    def render(self) -> str:
        lines = [
            f"config digest      {self.digest}",
            f"pairs              {self.pairs_completed}/{self.pairs_total} complete"
            f" ({self.pairs_processed} this run, {self.pairs_pruned} pruned)",
            f"b candidates       {self.b_candidates}",
            f"c candidates       {self.c_candidates}",
            f"hits               {len(self.hits)}",
            f"wall time          {self.wall_time:.2f} s",
            f"status             {'complete' if self.complete else 'incomplete'}",
        ]
        for reason, n in sorted(self.prune_reasons.items()):
            lines.append(f"pruned x{n:<5}      {reason}")
        for w in self.warnings:
            lines.append(f"warning            {w}")
        return "\n".join(lines)


# -- worker side --------------------------------------------------------------

_W_CFG: Optional[CampaignConfig] = None
_W_DIGEST = ""
_W_SPILL: Optional[Path] = None


def _init_worker(cfg: CampaignConfig, digest: str, spill_dir: Optional[str]) -> None:
    global _W_CFG, _W_DIGEST, _W_SPILL
    _W_CFG, _W_DIGEST = cfg, digest
    _W_SPILL = Path(spill_dir) if spill_dir else None


def _spill(hits: Iterable[HitRecord]) -> None:
    hits = list(hits)
    if _W_SPILL is None or not hits:
        return
    path = _W_SPILL / f"worker-{os.getpid()}.jsonl"
    with open(path, "a") as fh:
        for h in hits:
            fh.write(json.dumps(h.to_json(), sort_keys=True) + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def _work(pair: Pair) -> PairResult:
    res = search_pair_detailed(pair[0], pair[1], _W_CFG, _W_DIGEST)
    _spill(res.hits)
    return res


# -- main side ----------------------------------------------------------------


def _paths(cfg: CampaignConfig) -> Tuple[Optional[Path], Optional[Path], Optional[Path]]:
    ckpt = Path(cfg.checkpoint_path) if cfg.checkpoint_path else None
    out = Path(cfg.output_path) if cfg.output_path else None
    anchor = out or ckpt
    spill = anchor.with_name(anchor.name + ".spill.d") if anchor else None
    return ckpt, out, spill


def _read_spill(spill: Optional[Path]) -> List[HitRecord]:
    if spill is None or not spill.exists():
        return []
    out = []
    for f in sorted(spill.glob("*.jsonl")):
        for line in f.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                out.append(HitRecord.from_json(json.loads(line)))
            except (ValueError, KeyError):
                # torn trailing record; its pair was never checkpointed
                continue
    return out


def _merge(records: Iterable[HitRecord], done: Iterable[Pair]) -> List[HitRecord]:
    done = set(done)
    best: Dict[Tuple[int, int, int, int], HitRecord] = {}
    for h in records:
        if (h.a1, h.a2) in done and h.key() not in best:
            best[h.key()] = h
    return [best[k] for k in sorted(best)]


def _write_output(path: Path, hits: List[HitRecord]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        for h in hits:
            fh.write(json.dumps(h.to_json(), sort_keys=True) + "\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _clear_spill(spill: Optional[Path]) -> None:
    if spill is None:
        return
    spill.mkdir(parents=True, exist_ok=True)
    for f in spill.glob("*.jsonl"):
        f.unlink()


def _summarize(report: CampaignReport, entries: Dict[Pair, PairEntry], pairs: List[Pair]) -> None:
    report.pairs_total = len(pairs)
    relevant = [entries[p] for p in pairs if p in entries]
    report.pairs_completed = len(relevant)
    report.pairs_pruned = sum(1 for e in relevant if e.status == "pruned")
    report.b_candidates = sum(e.b_tested for e in relevant)
    report.c_candidates = sum(e.c_tested for e in relevant)
    reasons: Dict[str, int] = {}
    for e in relevant:
        if e.reason:
            reasons[e.reason] = reasons.get(e.reason, 0) + 1
    report.prune_reasons = reasons
    report.complete = report.pairs_completed == report.pairs_total


def run_campaign(cfg: CampaignConfig, stop_after: Optional[int] = None,
                 resume: bool = True) -> CampaignReport:
    """Process every pair not already in the checkpoint.

    ``stop_after`` ends the run after that many pairs are checkpointed,
    leaving the files as an interrupted run would.
    """
    start = time.monotonic()
    digest = cfg.digest()
    report = CampaignReport(digest)
    ckpt_path, out_path, spill = _paths(cfg)
    pairs = cfg.pairs()

    entries: Dict[Pair, PairEntry] = {}
    ckpt = Checkpoint(ckpt_path, digest) if ckpt_path else None
    if ckpt is not None:
        if resume:
            entries, warning = ckpt.load()
            if warning:
                log.warning(warning)
                report.warnings.append(warning)
        report.resumed = bool(entries)
        if not entries:
            ckpt.reset()
            _clear_spill(spill)
    elif spill is not None:
        _clear_spill(spill)
    if spill is not None:
        spill.mkdir(parents=True, exist_ok=True)

    pending = [p for p in pairs if p not in entries]
    memory_hits: List[HitRecord] = []
    processed = 0

    def record(res: PairResult) -> None:
        nonlocal processed
        entry = PairEntry.from_result(res)
        if ckpt is not None:
            ckpt.append(entry)
        entries[(res.a1, res.a2)] = entry
        memory_hits.extend(res.hits)
        processed += 1

    spill_arg = str(spill) if spill else None
    limit = len(pending) if stop_after is None else min(stop_after, len(pending))
    if cfg.worker_count == 1 or limit <= 1:
        _init_worker(cfg, digest, spill_arg)
        for pair in pending[:limit]:
            record(_work(pair))
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count, initializer=_init_worker,
                                 initargs=(cfg, digest, spill_arg)) as pool:
            queue = iter(pending)
            inflight = set()
            # keep at most two tasks per worker queued so an interrupt loses little
            for pair in queue:
                inflight.add(pool.submit(_work, pair))
                if len(inflight) >= 2 * cfg.worker_count:
                    break
            while inflight and processed < limit:
                done, inflight = wait(inflight, return_when=FIRST_COMPLETED)
                for fut in sorted(done, key=lambda f: (f.result().a1, f.result().a2)):
                    if processed >= limit:
                        break
                    record(fut.result())
                    nxt = next(queue, None)
                    if nxt is not None:
                        inflight.add(pool.submit(_work, nxt))
            for fut in inflight:
                fut.cancel()

    report.pairs_processed = processed
    _summarize(report, entries, pairs)
    if spill is not None:
        hits = _merge(_read_spill(spill), entries)
    else:
        hits = _merge(memory_hits, entries)
    report.hits = hits
    if out_path is not None and report.complete:
        _write_output(out_path, hits)
    report.wall_time = time.monotonic() - start
    return report


def campaign_report(cfg: CampaignConfig) -> CampaignReport:
    """Summary from the checkpoint and spill files, without searching."""
    digest = cfg.digest()
    report = CampaignReport(digest)
    ckpt_path, _out, spill = _paths(cfg)
    entries: Dict[Pair, PairEntry] = {}
    if ckpt_path is not None:
        entries, warning = Checkpoint(ckpt_path, digest).load()
        if warning:
            report.warnings.append(warning)
    _summarize(report, entries, cfg.pairs())
    report.hits = _merge(_read_spill(spill), entries)
    return report


def read_hits(path: str | Path) -> List[HitRecord]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            out.append(HitRecord.from_json(json.loads(line)))
    return out
