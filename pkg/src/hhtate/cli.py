"""Command-line front end.

Exit codes: 0 verified, 1 verification failure, 2 usage or input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import algebra_to_dict, dump_lines
from .golden import compare_trace, load_golden
from .hochschild import ModelError, diagonal_pairing, extreme_pairing, hochschild_homology
from .quiver import extreme_algebra, quadratic_dual_extreme
from .smith import CellComplexError, corpus_names, load_complex, load_corpus, localization_check, smith_inequality_check
from .strands import antipodal_pmc, matched_algebra
from .tate import InternalInvariantError, LiftConfig, TateStructure, first_lift_matches, run_lift_chain

OK, FAILED, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    genus: list[int] = field(default_factory=list)
    weight: list[int] | None = None
    internal_diff: bool = True
    budget: int | None = None
    json_path: str | None = None
    golden_path: str | None = None
    compare_golden: bool = True
    threads: int = 1
    targets: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.budget is not None and self.budget < 0:
            raise UsageError("--budget must be non-negative")
        if self.threads < 1:
            raise UsageError("TATE_THREADS must be a positive integer")
        if any(g < 1 for g in self.genus):
            raise UsageError("genus must be at least 1")


def parse_range(text: str) -> list[int]:
    """'3', '1..4', '1,3' or '-2..2'."""
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    if re.fullmatch(r"-?\d+(,-?\d+)*", text):
        return [int(t) for t in text.split(",")]
    raise UsageError(f"cannot read {text!r} as an integer range (try 1..4)")


def _threads() -> int:
    raw = os.environ.get("TATE_THREADS", "1")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TATE_THREADS={raw!r} is not an integer") from None


def _map(fn, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def _emit(cfg: RunConfig, payload: dict) -> None:
    if cfg.json_path is None:
        return
    text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if cfg.json_path == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _hh_dict(h) -> dict:
    return {
        "total": h.total,
        "by_degree": {str(d): n for d, n in sorted(h.by_degree.items(), reverse=True) if n} if h.by_degree else None,
        "resolved": h.resolved,
    }


# ---------------------------------------------------------------------------
# verify-extreme


def _extreme_job(args):
    k, budget = args
    t = TateStructure(extreme_pairing(k))
    report = run_lift_chain(t, config=LiftConfig(budget=budget))
    out = report.to_dict()
    out["genus"] = k
    out["first_lift_formula"] = first_lift_matches(t)
    out["hochschild"] = _hh_dict(hochschild_homology(t.half))
    return out


def cmd_verify_extreme(cfg: RunConfig) -> int:
    runs = _map(_extreme_job, [(k, cfg.budget) for k in cfg.genus], cfg.threads)
    ok = True
    for r in runs:
        good = r["verdict"] == "pi-formal" and r["first_lift_formula"]
        ok &= good
        print(f"genus {r['genus']}: {r['verdict']} ({r['status']}), trace {r['trace']}, "
              f"step-1 formula {'matches' if r['first_lift_formula'] else 'DIFFERS'}")
    _emit(cfg, {"command": "verify-extreme", "runs": runs, "all_pi_formal": ok})
    return OK if ok else FAILED


# ---------------------------------------------------------------------------
# verify-genus2


def _genus2_job(args):
    weight, internal_diff, budget = args
    pa = diagonal_pairing(antipodal_pmc(2), weight, internal_diff)
    out = {"weight": weight, "algebra_dim": pa.first.dim}
    try:
        t = TateStructure(pa)
        h = hochschild_homology(t.half)
        out["hochschild"] = _hh_dict(h)
        out.update(run_lift_chain(t, config=LiftConfig(budget=budget)).to_dict())
    except ModelError as exc:
        out.update(status="model-error", verdict="undecided", error=str(exc))
    return out


def cmd_verify_genus2(cfg: RunConfig) -> int:
    weights = cfg.weight if cfg.weight is not None else [-2, -1, 0, 1, 2]
    if any(abs(w) > 2 for w in weights):
        raise UsageError("genus-2 weights lie in -2..2")
    runs = _map(_genus2_job, [(w, cfg.internal_diff, cfg.budget) for w in weights], cfg.threads)
    payload: dict = {"command": "verify-genus2", "internal_diff": cfg.internal_diff, "runs": runs}
    ok = True
    for r in runs:
        ok &= r["verdict"] == "pi-formal"
        line = f"weight {r['weight']:+d}: {r['verdict']} ({r['status']})"
        if "hochschild" in r:
            line += f", HH total {r['hochschild']['total']} {r['hochschild']['by_degree']}"
        if "error" in r:
            line += f": {r['error']}"
        print(line)
        if r["weight"] == 0 and "trace" in r:
            print(f"  trace {r['trace']}")
            if cfg.compare_golden:
                golden = load_golden(cfg.golden_path)["genus2_weight0"]
                cmp = compare_trace(r["trace"], r["verdict"], golden)
                hh = r["hochschild"]
                cmp.checks["hochschild_total"] = hh["total"] == golden["hochschild_total"]
                cmp.checks["hochschild_dims"] = hh["by_degree"] == golden["hochschild_dims"]
                payload["golden_match"] = cmp.status
                payload["golden"] = cmp.to_dict()
                failed = [k for k, v in cmp.checks.items() if not v]
                print(f"  golden_match: {cmp.status} (first {cmp.matched_prefix} entries agree"
                      + (f"; failing checks: {', '.join(failed)})" if failed else ")"))
    payload["all_pi_formal"] = ok
    _emit(cfg, payload)
    return OK if ok else FAILED


# ---------------------------------------------------------------------------
# smith


def cmd_smith(cfg: RunConfig) -> int:
    targets = cfg.targets or corpus_names()
    payload = {"command": "smith", "complexes": []}
    ok = True
    for name in targets:
        try:
            x = load_corpus(name) if name in corpus_names() else load_complex(name)
        except (CellComplexError, OSError) as exc:
            print(f"{name}: {exc}", file=sys.stderr)
            return USAGE
        loc = localization_check(x)
        sm = smith_inequality_check(x)
        good = loc.holds and sm.holds
        ok &= good
        print(f"{name}: Tate {loc.tate} per degree, H(fix) {loc.fixed}, "
              f"Smith {sm.fixed_total} <= {sm.total}: {'pass' if good else 'FAIL'}")
        payload["complexes"].append({
            "name": name,
            "tate_per_degree": loc.tate,
            "fixed_total": loc.fixed,
            "total": sm.total,
            "vh_e1_rows": {str(q): n for q, n in sorted(sm.vh_e1.items())},
            "localization": loc.holds,
            "smith": sm.holds,
        })
    _emit(cfg, payload)
    return OK if ok else FAILED


# ---------------------------------------------------------------------------
# algebra-dump


def parse_algebra_spec(text: str):
    m = re.fullmatch(r"(antipodal|extreme|dual):(\d+)", text.strip())
    if not m or int(m.group(2)) < 1:
        raise UsageError(f"cannot read algebra {text!r} (expected antipodal:K, extreme:K or dual:K with K >= 1)")
    return m.group(1), int(m.group(2))


def cmd_algebra_dump(cfg: RunConfig) -> int:
    kind, k = parse_algebra_spec(cfg.targets[0])
    if kind == "antipodal":
        weights = cfg.weight if cfg.weight is not None else [0]
        if any(abs(w) > k for w in weights):
            raise UsageError(f"weights for genus {k} lie in {-k}..{k}")
        algs = [matched_algebra(antipodal_pmc(k), w) for w in weights]
    elif kind == "extreme":
        algs = [extreme_algebra(k)]
    else:
        algs = [quadratic_dual_extreme(k)]
    for a in algs:
        print(f"{a.name}: dimension {a.dim}, {len(a.idempotents)} idempotents")
        if cfg.json_path is None:
            for line in dump_lines(a):
                print("  " + line)
    _emit(cfg, {"command": "algebra-dump", "algebras": [algebra_to_dict(a) for a in algs]})
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hhtate", description="Hochschild-Tate computations over F2.")
    sub = p.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("verify-extreme", help="pi-formality of the extreme algebras")
    ext.add_argument("--genus", default="1..4", help="genus or range, e.g. 2 or 1..4")
    ext.add_argument("--budget", type=int)
    ext.add_argument("--json", dest="json_path", metavar="PATH", help="write the JSON report ('-' for stdout)")

    g2 = sub.add_parser("verify-genus2", help="pi-formality of the genus-2 antipodal algebras")
    g2.add_argument("--weight", help="weight or range (default -2..2)")
    g2.add_argument("--no-internal-diff", action="store_true", help="drop d(x) terms from the model differential")
    g2.add_argument("--budget", type=int)
    g2.add_argument("--json", dest="json_path", metavar="PATH")
    g2.add_argument("--golden", dest="golden_path", metavar="PATH", help="alternative golden table")
    g2.add_argument("--no-golden", action="store_true", help="skip the golden comparison")

    sm = sub.add_parser("smith", help="localization and Smith inequality for complexes with involution")
    sm.add_argument("complexes", nargs="*", help="bundled names or JSON files (default: whole corpus)")
    sm.add_argument("--json", dest="json_path", metavar="PATH")

    dump = sub.add_parser("algebra-dump", help="print an algebra's basis")
    dump.add_argument("spec", help="antipodal:K, extreme:K or dual:K")
    dump.add_argument("--weight", help="weight or range for antipodal algebras (default 0)")
    dump.add_argument("--json", dest="json_path", metavar="PATH")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, threads=_threads(), json_path=getattr(ns, "json_path", None))
    if ns.command == "verify-extreme":
        cfg.genus = parse_range(ns.genus)
    if getattr(ns, "weight", None) is not None:
        cfg.weight = parse_range(ns.weight)
    if ns.command == "verify-genus2":
        cfg.internal_diff = not ns.no_internal_diff
        cfg.golden_path = ns.golden_path
        cfg.compare_golden = not ns.no_golden
    if ns.command == "smith":
        cfg.targets = list(ns.complexes)
    if ns.command == "algebra-dump":
        cfg.targets = [ns.spec]
    cfg.budget = getattr(ns, "budget", None)
    cfg.__post_init__()
    return cfg


COMMANDS = {
    "verify-extreme": cmd_verify_extreme,
    "verify-genus2": cmd_verify_genus2,
    "smith": cmd_smith,
    "algebra-dump": cmd_algebra_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"hhtate {ns.command}: {exc}", file=sys.stderr)
        return USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
