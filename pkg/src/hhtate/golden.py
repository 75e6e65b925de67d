"""Reference values and trace comparison."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources


def load_golden(path: str | None = None) -> dict:
    if path is None:
        return json.loads((resources.files("hhtate") / "data" / "golden.json").read_text(encoding="utf-8"))
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def normalize_trace(trace: list) -> list:
    """Drop bookkeeping (correction levels, the closing 0) so traces compare as lists."""
    out = [{"correction": t["correction"]} if isinstance(t, dict) else t for t in trace]
    if out and out[-1] == 0:
        out.pop()
    return out


def lift_pairs(trace: list) -> list[tuple[int, int]]:
    """(|d e_{j-1}|, |e_j|) for every lift, in order."""
    nums: list[int] = []
    pairs = []
    for t in normalize_trace(trace):
        if isinstance(t, dict):
            nums = []
            continue
        nums.append(t)
        if len(nums) == 2:
            pairs.append((nums[0], nums[1]))
            nums = []
    return pairs


def corrections(trace: list) -> list[int]:
    return [t["correction"] for t in trace if isinstance(t, dict)]


@dataclass
class GoldenComparison:
    status: str
    matched_prefix: int
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": self.status, "matched_prefix": self.matched_prefix, "checks": self.checks}


def compare_trace(trace: list, verdict: str, golden: dict) -> GoldenComparison:
    """full: identical trace.  partial: the representative-independent
    fallback holds (first and last counts, halving on every lift, the
    correction sizes, the verdict).  fail: anything else."""
    ours = normalize_trace(trace)
    ref = golden["trace"]
    prefix = 0
    for a, b in zip(ours, ref):
        if a != b:
            break
        prefix += 1
    pairs = lift_pairs(ours)
    ref_pairs = lift_pairs(ref)
    checks = {
        "first": bool(pairs) and pairs[0][0] == ref_pairs[0][0],
        "last": bool(pairs) and pairs[-1][1] == ref_pairs[-1][1],
        "halving": all(b == 2 * l for b, l in pairs),
        "corrections": corrections(ours) == corrections(ref),
        "verdict": verdict == golden.get("verdict", "pi-formal"),
    }
    if ours == ref and checks["verdict"]:
        status = "full"
    elif all(checks.values()):
        status = "partial"
    else:
        status = "fail"
    return GoldenComparison(status, prefix, checks)
