"""Regenerate the bundled complexes with involution under src/hhtate/data/complexes.

    python scripts/make_complex_corpus.py           # rewrite the files
    python scripts/make_complex_corpus.py --check   # exit 1 if any file differs
"""

import argparse
import json
import sys
from pathlib import Path

from hhtate.smith import build, localization_check

OUT = Path(__file__).resolve().parent.parent / "src" / "hhtate" / "data" / "complexes"


def torus_grid():
    # 2x2 grid on R^2/Z^2; v_ij at (i/2, j/2), h_ij from v_ij to v_(i+1)j, u_ij from v_ij to v_i(j+1)
    def v(i, j):
        return 2 * (i % 2) + (j % 2)

    verts = [f"v{i}{j}" for i in range(2) for j in range(2)]
    hs = [f"h{i}{j}" for i in range(2) for j in range(2)]
    us = [f"u{i}{j}" for i in range(2) for j in range(2)]
    h_bd = [[v(i, j), v(i + 1, j)] for i in range(2) for j in range(2)]
    u_bd = [[v(i, j), v(i, j + 1)] for i in range(2) for j in range(2)]

    def h(i, j):
        return 2 * (i % 2) + (j % 2)

    def u(i, j):
        return 4 + 2 * (i % 2) + (j % 2)

    faces = [f"f{i}{j}" for i in range(2) for j in range(2)]
    f_bd = [[h(i, j), h(i, j + 1), u(i, j), u(i + 1, j)] for i in range(2) for j in range(2)]
    # z -> -z fixes every vertex, sends the edge leaving v_ij forwards to the one arriving backwards
    inv1 = [h(i - 1, j) for i in range(2) for j in range(2)] + [u(i, j - 1) for i in range(2) for j in range(2)]
    inv2 = [2 * ((-i - 1) % 2) + ((-j - 1) % 2) for i in range(2) for j in range(2)]
    return (
        {0: verts, 1: hs + us, 2: faces},
        {1: h_bd + u_bd, 2: f_bd},
        {0: [0, 1, 2, 3], 1: inv1, 2: inv2},
    )


CORPUS = {
    "antipodal_sphere": (
        "antipodal map on the sphere; free",
        {0: ["v+", "v-"], 1: ["e+", "e-"], 2: ["f+", "f-"]},
        {1: [[0, 1], [0, 1]], 2: [[0, 1], [0, 1]]},
        {0: [1, 0], 1: [1, 0], 2: [1, 0]},
    ),
    "free_rotation_circle": (
        "rotation by a half turn; free",
        {0: ["v0", "v1"], 1: ["e0", "e1"]},
        {1: [[0, 1], [0, 1]]},
        {0: [1, 0], 1: [1, 0]},
    ),
    "interval_flip": (
        "interval flipped about its midpoint, subdivided there; fixed set is the midpoint",
        {0: ["a", "m", "b"], 1: ["am", "mb"]},
        {1: [[0, 1], [1, 2]]},
        {0: [2, 1, 0], 1: [1, 0]},
    ),
    "reflection_circle": (
        "circle reflected across the north-south axis; fixed set is two points",
        {0: ["n", "s"], 1: ["east", "west"]},
        {1: [[0, 1], [0, 1]]},
        {0: [0, 1], 1: [1, 0]},
    ),
    "reflection_sphere": (
        "sphere reflected across the equatorial plane; fixed set is the equator",
        {0: ["p", "q"], 1: ["front", "back"], 2: ["north", "south"]},
        {1: [[0, 1], [0, 1]], 2: [[0, 1], [0, 1]]},
        {0: [0, 1], 1: [0, 1], 2: [1, 0]},
    ),
    "torus_hyperelliptic": (
        "torus R^2/Z^2 with z -> -z on the 2x2 grid; fixed set is the four half-periods",
        *torus_grid(),
    ),
    "trivial_circle": ("circle with the identity", {0: ["v"], 1: ["e"]}, {1: [[]]}, {0: [0], 1: [0]}),
    "trivial_point": ("point with the identity", {0: ["pt"]}, {}, {0: [0]}),
}


def render(name: str) -> str:
    note, cells, boundary, involution = CORPUS[name]
    x = build(cells, boundary, involution, name=name)  # validates
    if not localization_check(x).holds:
        raise SystemExit(f"{name}: localization fails, refusing to write")
    doc = {
        "name": name,
        "note": note,
        "cells": {str(n): list(v) for n, v in cells.items()},
        "boundary": {str(n): [list(c) for c in v] for n, v in boundary.items()},
        "involution": {str(n): list(v) for n, v in involution.items()},
    }
    return json.dumps(doc, indent=1) + "\n"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args()
    stale = []
    for name in CORPUS:
        text = render(name)
        path = OUT / f"{name}.json"
        if args.check:
            if not path.exists() or json.loads(path.read_text()) != json.loads(text):
                stale.append(name)
        else:
            path.write_text(text, encoding="utf-8")
    if stale:
        print("out of date: " + ", ".join(stale))
        return 1
    print(f"{len(CORPUS)} complexes {'up to date' if args.check else 'written'} in {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
