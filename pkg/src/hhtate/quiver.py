"""Path algebras of quivers with monomial relations.

Words are read left to right: the word ``("x", "y")`` is ``x`` followed by
``y``, so it is composable when target(x) == source(y).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import AlgebraError, FinDGAlgebra, build_algebra


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int = 0


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex names must be unique")
        clash = set(names) & set(self.vertices)
        if clash:
            raise AlgebraError(f"names used for both vertices and arrows: {sorted(clash)}")
        by_name = {a.name: a for a in self.arrows}
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise AlgebraError(f"arrow {a.name} has an unknown endpoint")
        for rel in self.relations:
            if len(rel) < 2:
                raise AlgebraError(f"relation {rel} must have length >= 2")
            for x in rel:
                if x not in by_name:
                    raise AlgebraError(f"relation {rel} uses unknown arrow {x}")
            for x, y in zip(rel, rel[1:]):
                if by_name[x].target != by_name[y].source:
                    raise AlgebraError(f"relation {rel} is not a composable path")

    @classmethod
    def from_json(cls, text: str) -> "QuiverPresentation":
        raw = json.loads(text)
        arrows = tuple(
            Arrow(a["name"], a["from"], a["to"], int(a.get("degree", 0))) for a in raw["arrows"]
        )
        return cls(tuple(raw["vertices"]), arrows, tuple(tuple(r) for r in raw["relations"]))

    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": list(self.vertices),
                "arrows": [
                    {"name": a.name, "from": a.source, "to": a.target, "degree": a.degree}
                    for a in self.arrows
                ],
                "relations": [list(r) for r in self.relations],
            }
        )


def enumerate_paths(p: QuiverPresentation, cap: int = 100_000) -> list[tuple[str, ...]]:
    """All paths containing no relation as a contiguous subword, by length."""
    by_name = {a.name: a for a in p.arrows}
    out_of: dict[str, list[Arrow]] = {v: [] for v in p.vertices}
    for a in p.arrows:
        out_of[a.source].append(a)
    rels = set(p.relations)
    max_rel = max((len(r) for r in rels), default=0)

    paths: list[tuple[str, ...]] = []
    frontier = [(a.name,) for a in p.arrows]
    while frontier:
        paths.extend(frontier)
        if len(paths) > cap:
            raise AlgebraError(f"path algebra exceeds {cap} paths; presentation looks infinite")
        nxt = []
        for w in frontier:
            for a in out_of[by_name[w[-1]].target]:
                cand = w + (a.name,)
                if not any(cand[-L:] in rels for L in range(2, min(max_rel, len(cand)) + 1)):
                    nxt.append(cand)
        frontier = nxt
    return paths


def algebra_from_quiver(p: QuiverPresentation, cap: int = 100_000, name: str = "") -> FinDGAlgebra:
    by_name = {a.name: a for a in p.arrows}
    paths = enumerate_paths(p, cap)
    labels = list(p.vertices) + ["*".join(w) for w in paths]
    vidx = {v: i for i, v in enumerate(p.vertices)}
    nv = len(p.vertices)
    left = list(range(nv)) + [vidx[by_name[w[0]].source] for w in paths]
    right = list(range(nv)) + [vidx[by_name[w[-1]].target] for w in paths]
    degrees = [0] * nv + [sum(by_name[x].degree for x in w) for w in paths]
    pidx = {w: nv + i for i, w in enumerate(paths)}
    products: dict[tuple[int, int], int] = {}
    for v in range(nv):
        products[(v, v)] = 1 << v
    for w, i in pidx.items():
        products[(left[i], i)] = 1 << i
        products[(i, right[i])] = 1 << i
    for w1, i in pidx.items():
        for w2, j in pidx.items():
            if right[i] != left[j]:
                continue
            k = pidx.get(w1 + w2)
            if k is not None:
                products[(i, j)] = 1 << k
    return build_algebra(labels, left, right, list(range(nv)), products, degrees=degrees, name=name)


def extreme_presentation(k: int) -> QuiverPresentation:
    """Quiver for the extreme-weight algebra: vertices 1..2k, arrows
    a_i, b_i : i -> i+1 and c : 2k -> 1, relations
    a_i b_{i+1} = b_i a_{i+1} = b_{2k-1} c = c a_1 = 0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k
    verts = tuple(f"i{j}" for j in range(1, n + 1))
    arrows = []
    for i in range(1, n):
        arrows.append(Arrow(f"a{i}", f"i{i}", f"i{i + 1}"))
        arrows.append(Arrow(f"b{i}", f"i{i}", f"i{i + 1}"))
    arrows.append(Arrow("c", f"i{n}", "i1"))
    rels = []
    for i in range(1, n - 1):
        rels.append((f"a{i}", f"b{i + 1}"))
        rels.append((f"b{i}", f"a{i + 1}"))
    rels.append((f"b{n - 1}", "c"))
    rels.append(("c", "a1"))
    return QuiverPresentation(verts, tuple(arrows), tuple(rels))


def dual_extreme_presentation(k: int) -> QuiverPresentation:
    """Quadratic dual: arrows a'_i, b'_i : i+1 -> i and c' : 1 -> 2k.  Reading
    paths left to right, a'_{i+1}a'_i, b'_{i+1}b'_i, c'a'_{2k-1} and b'_1c'
    vanish."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k
    verts = tuple(f"i{j}" for j in range(1, n + 1))
    arrows = []
    for i in range(1, n):
        arrows.append(Arrow(f"a{i}'", f"i{i + 1}", f"i{i}"))
        arrows.append(Arrow(f"b{i}'", f"i{i + 1}", f"i{i}"))
    arrows.append(Arrow("c'", "i1", f"i{n}"))
    rels = []
    for i in range(1, n - 1):
        rels.append((f"a{i + 1}'", f"a{i}'"))
        rels.append((f"b{i + 1}'", f"b{i}'"))
    rels.append(("c'", f"a{n - 1}'"))
    rels.append(("b1'", "c'"))
    return QuiverPresentation(verts, tuple(arrows), tuple(rels))


def extreme_algebra(k: int) -> FinDGAlgebra:
    return algebra_from_quiver(extreme_presentation(k), name=f"A_extreme({k})")


def quadratic_dual_extreme(k: int) -> FinDGAlgebra:
    return algebra_from_quiver(dual_extreme_presentation(k), name=f"B_extreme({k})")


def extreme_generator_pairs(k: int) -> list[tuple[str, str]]:
    """(xi, xi') label pairs: (a_i, a'_i), (b_i, b'_i), (c, c')."""
    n = 2 * k
    pairs = []
    for i in range(1, n):
        pairs.append((f"a{i}", f"a{i}'"))
        pairs.append((f"b{i}", f"b{i}'"))
    pairs.append(("c", "c'"))
    return pairs
