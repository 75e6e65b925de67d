"""Pointed matched circles and the algebras A(Z, i) built from strand diagrams.

A strand diagram on points 1..n is a tuple of (start, end) pairs sorted by
start, with end >= start.  A matched generator records its moving strands
and the matched pairs that carry a horizontal strand; it stands for the sum
of strand diagrams obtained by choosing one point of each horizontal pair
(its *sections*).  Multiplication and differential of matched generators are
computed on those sums inside the plain strands algebra and then recognised
as sums of matched generators again.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .algebra import AlgebraError, FinDGAlgebra, build_algebra

Diagram = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PointedMatchedCircle:
    """Points 1..4k in circle order (basepoint after 4k) and a perfect matching."""

    n_points: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.n_points
        if n % 4 or n <= 0:
            raise ValueError("a pointed matched circle has 4k points")
        flat = sorted(p for pr in self.pairs for p in pr)
        if flat != list(range(1, n + 1)) or any(a == b for a, b in self.pairs):
            raise ValueError("matching must pair every point exactly once")
        if surgery_components(self) != 1:
            raise ValueError("surgery on the matched pairs does not give a single circle")

    @property
    def genus(self) -> int:
        return self.n_points // 4

    @cached_property
    def pair_of(self) -> dict[int, int]:
        """Point -> index of its matched pair."""
        out = {}
        for j, (a, b) in enumerate(self.pairs):
            out[a] = j
            out[b] = j
        return out

    def partner(self, p: int) -> int:
        a, b = self.pairs[self.pair_of[p]]
        return b if p == a else a

    def chords(self) -> list[tuple[int, int]]:
        n = self.n_points
        return [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]


def surgery_components(z: PointedMatchedCircle) -> int:
    """Number of circles after surgery on the matched pairs.

    Walking forward from a point to the next one and crossing the band to
    its partner is the permutation p -> M(p + 1); its cycles are the
    boundary circles.
    """
    n = z.n_points
    partner = {}
    for a, b in z.pairs:
        partner[a], partner[b] = b, a
    seen = set()
    cycles = 0
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycles += 1
        p = start
        while p not in seen:
            seen.add(p)
            p = partner[p % n + 1]
    return cycles


def antipodal_pmc(k: int) -> PointedMatchedCircle:
    if k < 1:
        raise ValueError("genus must be >= 1")
    return PointedMatchedCircle(4 * k, tuple((i, i + 2 * k) for i in range(1, 2 * k + 1)))


# ---------------------------------------------------------------------------
# plain strands algebra


def inversions(d: Diagram) -> int:
    ends = [t for _, t in d]
    return sum(1 for i in range(len(ends)) for j in range(i + 1, len(ends)) if ends[i] > ends[j])


def compose(d1: Diagram, d2: Diagram) -> Diagram | None:
    """Product d1 * d2 (d1 first): zero unless ends(d1) = starts(d2) and
    crossing numbers add."""
    m2 = dict(d2)
    if sorted(t for _, t in d1) != sorted(m2):
        return None
    out = tuple((s, m2[t]) for s, t in d1)
    if inversions(out) != inversions(d1) + inversions(d2):
        return None
    return out


def resolve_crossings(d: Diagram) -> list[Diagram]:
    """Diagrams obtained by resolving one crossing, dropping inv by exactly 1."""
    inv = inversions(d)
    out = []
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            (si, ti), (sj, tj) = d[i], d[j]
            if ti > tj:
                new = list(d)
                new[i], new[j] = (si, tj), (sj, ti)
                new_d = tuple(new)
                if inversions(new_d) == inv - 1:
                    out.append(new_d)
    return out


def _diagram_label(d: Diagram) -> str:
    return "[" + ",".join(f"{s}>{t}" for s, t in d) + "]"


def enumerate_diagrams(n: int, m: int) -> list[Diagram]:
    out = []
    for S in itertools.combinations(range(1, n + 1), m):
        for T in itertools.combinations(range(1, n + 1), m):
            for perm in itertools.permutations(T):
                if all(t >= s for s, t in zip(S, perm)):
                    out.append(tuple(zip(S, perm)))
    out.sort(key=lambda d: (tuple(s for s, _ in d), tuple(sorted(t for _, t in d)), d))
    return out


def strands_algebra(n: int, m: int) -> FinDGAlgebra:
    """The strands algebra on n points with m strands."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    diagrams = enumerate_diagrams(n, m)
    idx = {d: i for i, d in enumerate(diagrams)}
    idem_sets = list(itertools.combinations(range(1, n + 1), m))
    eidx = {S: e for e, S in enumerate(idem_sets)}
    idempotents = [idx[tuple((s, s) for s in S)] for S in idem_sets]
    left = [eidx[tuple(s for s, _ in d)] for d in diagrams]
    right = [eidx[tuple(sorted(t for _, t in d))] for d in diagrams]
    by_start: dict[tuple, list[int]] = {}
    for i, d in enumerate(diagrams):
        by_start.setdefault(tuple(s for s, _ in d), []).append(i)
    products = {}
    for i, d1 in enumerate(diagrams):
        ends = tuple(sorted(t for _, t in d1))
        for j in by_start.get(ends, ()):
            p = compose(d1, diagrams[j])
            if p is not None:
                products[(i, j)] = 1 << idx[p]
    diff = []
    for d in diagrams:
        v = 0
        for r in resolve_crossings(d):
            v ^= 1 << idx[r]
        diff.append(v)
    return build_algebra(
        [_diagram_label(d) for d in diagrams],
        left,
        right,
        idempotents,
        products,
        diff,
        degrees=[inversions(d) for d in diagrams],
        name=f"A({n},{m})",
    )


# ---------------------------------------------------------------------------
# matched algebra


@dataclass(frozen=True, order=True)
class MatchedGenerator:
    moving: tuple[tuple[int, int], ...]
    horizontals: tuple[int, ...]

    def label(self) -> str:
        mv = ",".join(f"{s}>{t}" for s, t in self.moving)
        hz = ",".join(f"h{h + 1}" for h in self.horizontals)
        return "{" + ";".join(x for x in (mv, hz) if x) + "}" if (mv or hz) else "{}"


def _left_pairs(z: PointedMatchedCircle, g: MatchedGenerator) -> tuple[int, ...]:
    return tuple(sorted({z.pair_of[s] for s, _ in g.moving} | set(g.horizontals)))


def _right_pairs(z: PointedMatchedCircle, g: MatchedGenerator) -> tuple[int, ...]:
    return tuple(sorted({z.pair_of[t] for _, t in g.moving} | set(g.horizontals)))


def matched_generators(z: PointedMatchedCircle, strands: int) -> list[MatchedGenerator]:
    """All generators with ``strands`` = moving + horizontal strands."""
    n = z.n_points
    npairs = len(z.pairs)
    out = []
    for nm in range(0, strands + 1):
        nh = strands - nm
        for S in itertools.combinations(range(1, n + 1), nm):
            if len({z.pair_of[s] for s in S}) != nm:
                continue
            for T in itertools.permutations(range(1, n + 1), nm):
                if any(t <= s for s, t in zip(S, T)):
                    continue
                if len({z.pair_of[t] for t in T}) != nm:
                    continue
                moving = tuple(zip(S, T))
                used = {z.pair_of[s] for s in S} | {z.pair_of[t] for t in T}
                free = [j for j in range(npairs) if j not in used]
                for H in itertools.combinations(free, nh):
                    out.append(MatchedGenerator(moving, H))
    out = sorted(set(out), key=lambda g: (_left_pairs(z, g), _right_pairs(z, g), g))
    return out


def sections(z: PointedMatchedCircle, g: MatchedGenerator) -> list[Diagram]:
    out = []
    for choice in itertools.product(*(z.pairs[h] for h in g.horizontals)):
        strands = list(g.moving) + [(p, p) for p in choice]
        out.append(tuple(sorted(strands)))
    return out


def _generator_of(z: PointedMatchedCircle, d: Diagram) -> MatchedGenerator:
    moving = tuple((s, t) for s, t in d if t > s)
    horizontals = tuple(sorted(z.pair_of[s] for s, t in d if t == s))
    return MatchedGenerator(moving, horizontals)


def recognise(z: PointedMatchedCircle, diagrams: set[Diagram], gindex: dict) -> int:
    """Write a set (F2 sum) of diagrams as a sum of matched generators."""
    out = 0
    by_gen: dict[MatchedGenerator, set[Diagram]] = {}
    for d in diagrams:
        by_gen.setdefault(_generator_of(z, d), set()).add(d)
    for g, ds in by_gen.items():
        if g not in gindex or ds != set(sections(z, g)):
            raise AlgebraError(f"strand sum does not lie in the matched subalgebra near {g.label()}")
        out ^= 1 << gindex[g]
    return out


def _xor_add(acc: set, d) -> None:
    if d in acc:
        acc.remove(d)
    else:
        acc.add(d)


def matched_algebra(z: PointedMatchedCircle, weight: int) -> FinDGAlgebra:
    """A(Z, weight), the summand with k + weight occupied matched pairs."""
    k = z.genus
    if not -k <= weight <= k:
        raise ValueError(f"weight must lie in [-{k}, {k}]")
    m = k + weight
    gens = matched_generators(z, m)
    gindex = {g: i for i, g in enumerate(gens)}
    idem_sets = list(itertools.combinations(range(len(z.pairs)), m))
    eidx = {S: e for e, S in enumerate(idem_sets)}
    idempotents = [gindex[MatchedGenerator((), S)] for S in idem_sets]
    left = [eidx[_left_pairs(z, g)] for g in gens]
    right = [eidx[_right_pairs(z, g)] for g in gens]
    secs = [sections(z, g) for g in gens]

    by_left: dict[int, list[int]] = {}
    for j in range(len(gens)):
        by_left.setdefault(left[j], []).append(j)

    products = {}
    for i in range(len(gens)):
        for j in by_left.get(right[i], ()):
            acc: set[Diagram] = set()
            for d1 in secs[i]:
                for d2 in secs[j]:
                    p = compose(d1, d2)
                    if p is not None:
                        _xor_add(acc, p)
            if acc:
                products[(i, j)] = recognise(z, acc, gindex)
    diff = []
    for i in range(len(gens)):
        acc = set()
        for d in secs[i]:
            for r in resolve_crossings(d):
                _xor_add(acc, r)
        diff.append(recognise(z, acc, gindex) if acc else 0)
    return build_algebra(
        [g.label() for g in gens],
        left,
        right,
        idempotents,
        products,
        diff,
        name=f"A(Z_{k},{weight})",
    )


def idempotent_pairs(z: PointedMatchedCircle, weight: int) -> list[tuple[int, ...]]:
    """Occupied-pair sets of the idempotents of A(Z, weight), in algebra order."""
    return list(itertools.combinations(range(len(z.pairs)), z.genus + weight))


def chord_elements(z: PointedMatchedCircle, weight: int, alg: FinDGAlgebra | None = None):
    """For every chord [p, q], the element a(xi) of A(Z, weight): the sum of
    all generators with the single moving strand p -> q and the remaining
    strands horizontal.  Chords with no completion map to 0."""
    if alg is None:
        alg = matched_algebra(z, weight)
    k = z.genus
    m = k + weight
    out = []
    for p, q in z.chords():
        used = {z.pair_of[p], z.pair_of[q]}
        free = [j for j in range(len(z.pairs)) if j not in used]
        v = 0
        if m >= 1:
            for H in itertools.combinations(free, m - 1):
                v ^= 1 << alg.index(MatchedGenerator(((p, q),), H).label())
        out.append(((p, q), v))
    return out
