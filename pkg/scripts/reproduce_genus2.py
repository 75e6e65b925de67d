"""Lift chain for the genus-2 antipodal algebra in weight 0, under several
choices of orbit representative, compared with the frozen golden trace.

    python scripts/reproduce_genus2.py                    # label-lexicographic only
    python scripts/reproduce_genus2.py --scheme all       # every scheme (about a minute each)
    python scripts/reproduce_genus2.py --stop-at 8 --json runs.json

The half-lift keeps, from each free orbit {w, tau w}, the word with the
smaller key.  Counts after the first correction depend on that choice.
"""

import argparse
import json
import time

from hhtate.golden import compare_trace, load_golden
from hhtate.hochschild import diagonal_pairing, hochschild_homology
from hhtate.strands import antipodal_pmc
from hhtate.tate import InternalInvariantError, LiftConfig, TateStructure, run_lift_chain


def schemes(pa):
    key = pa.sort_key
    return {
        "label-lex": key,
        "label-lex-reversed": lambda w: tuple(-t for t in key(w)),
        "index": lambda w: w,
        "second-factor-first": lambda w: (key(w)[1], key(w)[0], key(w)[3], key(w)[2]),
    }


def main() -> None:
    pa = diagonal_pairing(antipodal_pmc(2), 0)
    table = schemes(pa)
    ap = argparse.ArgumentParser(description="genus-2 weight-0 lift chains")
    ap.add_argument("--scheme", default="label-lex", choices=[*table, "all"])
    ap.add_argument("--stop-at", type=int, help="stop once e_N exists (default: twice the HH depth)")
    ap.add_argument("--correction", default="min-boundary", choices=["min-boundary", "pivot"])
    ap.add_argument("--json", dest="json_path")
    args = ap.parse_args()

    golden = load_golden()["genus2_weight0"]
    print("golden trace:", golden["trace"])
    names = list(table) if args.scheme == "all" else [args.scheme]
    out = {}
    for name in names:
        t0 = time.perf_counter()
        t = TateStructure(pa, representative=table[name])
        if not out:
            h = hochschild_homology(t.half)
            print(f"HH total {h.total}, by degree {h.degree_list()}")
        cfg = LiftConfig(correction=args.correction, stop_at=args.stop_at)
        try:
            rep = run_lift_chain(t, config=cfg)
        except InternalInvariantError as exc:
            print(f"{name}: internal invariant violated: {exc}")
            continue
        cmp = compare_trace(rep.trace, rep.verdict, golden)
        dt = time.perf_counter() - t0
        print(f"{name}: {rep.verdict} ({rep.status}) in {dt:.0f}s")
        print(f"  trace {rep.trace}")
        print(f"  golden_match {cmp.status}, first {cmp.matched_prefix} entries agree, checks {cmp.checks}")
        if rep.obstruction:
            print(f"  obstruction {rep.obstruction}")
        out[name] = {"report": rep.to_dict(), "golden": cmp.to_dict()}
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
