"""Finite-basis dg algebras over F2 with idempotent bookkeeping.

Elements are bitmasks over the basis (bit ``i`` = coefficient of basis
element ``i``).  Products and differentials of basis elements are stored as
such bitmasks, so a product may be a sum of basis elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from .f2 import iter_bits, popcount


class AlgebraError(ValueError):
    """Raised when a presentation or table does not define a valid algebra."""


@dataclass(frozen=True, eq=False)
class FinDGAlgebra:
    """A dg algebra with a finite basis adapted to a set of idempotents.

    ``left[i]`` / ``right[i]`` index into ``idempotents`` (which lists basis
    indices of the primitive idempotents).  ``products`` holds only the
    nonzero products of basis pairs; ``diff`` the differential of each basis
    element.
    """

    labels: tuple[Hashable, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    idempotents: tuple[int, ...]
    products: Mapping[tuple[int, int], int]
    diff: tuple[int, ...]
    degrees: tuple[int, ...] | None = None
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if not (len(self.left) == len(self.right) == len(self.diff) == n):
            raise AlgebraError("basis data lengths differ")
        if len(set(self.labels)) != n:
            raise AlgebraError("duplicate basis labels")
        self._index.update({lab: i for i, lab in enumerate(self.labels)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def element(self, *labels: Hashable) -> int:
        out = 0
        for lab in labels:
            out ^= 1 << self._index[lab]
        return out

    def idempotent_element(self, e: int) -> int:
        """Bitmask of the idempotent with position ``e`` in ``idempotents``."""
        return 1 << self.idempotents[e]

    @property
    def unit(self) -> int:
        out = 0
        for i in self.idempotents:
            out |= 1 << i
        return out

    def basis_mul(self, i: int, j: int) -> int:
        return self.products.get((i, j), 0)

    def mul(self, x: int, y: int) -> int:
        out = 0
        prods = self.products
        ys = list(iter_bits(y))
        for i in iter_bits(x):
            for j in ys:
                out ^= prods.get((i, j), 0)
        return out

    def d(self, x: int) -> int:
        out = 0
        for i in iter_bits(x):
            out ^= self.diff[i]
        return out

    def format(self, x: int) -> str:
        if not x:
            return "0"
        return " + ".join(str(self.labels[i]) for i in iter_bits(x))

    def has_zero_differential(self) -> bool:
        return not any(self.diff)


def build_algebra(
    labels: Sequence[Hashable],
    left: Sequence[int],
    right: Sequence[int],
    idempotents: Sequence[int],
    products: Mapping[tuple[int, int], int],
    diff: Sequence[int] | None = None,
    degrees: Sequence[int] | None = None,
    name: str = "",
) -> FinDGAlgebra:
    clean = {k: v for k, v in products.items() if v}
    return FinDGAlgebra(
        labels=tuple(labels),
        left=tuple(left),
        right=tuple(right),
        idempotents=tuple(idempotents),
        products=clean,
        diff=tuple(diff) if diff is not None else (0,) * len(labels),
        degrees=tuple(degrees) if degrees is not None else None,
        name=name,
    )


@dataclass
class AxiomReport:
    """Violations found by :func:`check_dga_axioms`; empty means clean."""

    associativity: list[tuple] = field(default_factory=list)
    leibniz: list[tuple] = field(default_factory=list)
    d_squared: list[Hashable] = field(default_factory=list)
    idempotents: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.associativity or self.leibniz or self.d_squared or self.idempotents)

    def summary(self) -> str:
        if self.clean:
            return "clean"
        parts = []
        for name in ("associativity", "leibniz", "d_squared", "idempotents"):
            items = getattr(self, name)
            if items:
                parts.append(f"{name}: {len(items)} violation(s), first {items[0]!r}")
        return "; ".join(parts)


def check_dga_axioms(alg: FinDGAlgebra, limit: int | None = None) -> AxiomReport:
    """Exhaustively check associativity, Leibniz, d^2 = 0 and the idempotents.

    Only idempotent-composable triples are examined for associativity;
    products of non-composable pairs are checked to vanish as part of the
    idempotent checks.
    """
    rep = AxiomReport()
    n = alg.dim
    lab = alg.labels
    E = alg.idempotents

    # idempotents: orthogonal, complete, acting as the recorded sides
    for e, ie in enumerate(E):
        if alg.left[ie] != e or alg.right[ie] != e:
            rep.idempotents.append(f"idempotent {lab[ie]} has wrong sides")
        for f, jf in enumerate(E):
            want = (1 << ie) if e == f else 0
            if alg.basis_mul(ie, jf) != want:
                rep.idempotents.append(f"{lab[ie]}*{lab[jf]} is not {'itself' if e == f else 'zero'}")
    for i in range(n):
        for e, ie in enumerate(E):
            want_l = (1 << i) if alg.left[i] == e else 0
            want_r = (1 << i) if alg.right[i] == e else 0
            if alg.basis_mul(ie, i) != want_l or alg.basis_mul(i, ie) != want_r:
                rep.idempotents.append(f"idempotent {lab[ie]} acts wrongly on {lab[i]}")
    for (i, j), v in alg.products.items():
        if alg.right[i] != alg.left[j]:
            rep.idempotents.append(f"{lab[i]}*{lab[j]} nonzero across idempotents")
        for k in iter_bits(v):
            if alg.left[k] != alg.left[i] or alg.right[k] != alg.right[j]:
                rep.idempotents.append(f"{lab[i]}*{lab[j]} leaves its idempotent block")
                break
    for i in range(n):
        for k in iter_bits(alg.diff[i]):
            if alg.left[k] != alg.left[i] or alg.right[k] != alg.right[i]:
                rep.idempotents.append(f"d({lab[i]}) leaves its idempotent block")
                break

    by_left: dict[int, list[int]] = {}
    for j in range(n):
        by_left.setdefault(alg.left[j], []).append(j)

    for i in range(n):
        if alg.d(alg.diff[i]):
            rep.d_squared.append(lab[i])

    for i in range(n):
        for j in by_left.get(alg.right[i], ()):
            ij = alg.basis_mul(i, j)
            lhs = alg.d(ij)
            rhs = alg.mul(alg.diff[i], 1 << j) ^ alg.mul(1 << i, alg.diff[j])
            if lhs != rhs:
                rep.leibniz.append((lab[i], lab[j]))
            for k in by_left.get(alg.right[j], ()):
                if alg.mul(ij, 1 << k) != alg.mul(1 << i, alg.basis_mul(j, k)):
                    rep.associativity.append((lab[i], lab[j], lab[k]))
                    if limit and len(rep.associativity) >= limit:
                        return rep
    return rep


def opposite(alg: FinDGAlgebra) -> FinDGAlgebra:
    """Same basis, reversed product, idempotent sides swapped."""
    prods = {(j, i): v for (i, j), v in alg.products.items()}
    return FinDGAlgebra(
        labels=alg.labels,
        left=alg.right,
        right=alg.left,
        idempotents=alg.idempotents,
        products=prods,
        diff=alg.diff,
        degrees=alg.degrees,
        name=f"{alg.name}^op" if alg.name else "",
    )


def same_algebra(a: FinDGAlgebra, b: FinDGAlgebra) -> bool:
    """Literal equality of all structure maps (labels included)."""
    return (
        a.labels == b.labels
        and a.left == b.left
        and a.right == b.right
        and a.idempotents == b.idempotents
        and dict(a.products) == dict(b.products)
        and a.diff == b.diff
    )


# ---------------------------------------------------------------------------
# isomorphism search


def irreducibles(alg: FinDGAlgebra) -> list[int]:
    """Non-idempotent basis elements that never occur in a product of two
    non-idempotent basis elements (a basis of rad/rad^2 for monomial
    algebras)."""
    idem = set(alg.idempotents)
    hit = 0
    for (i, j), v in alg.products.items():
        if i not in idem and j not in idem:
            hit |= v
    return [i for i in range(alg.dim) if i not in idem and not (hit >> i) & 1]


def _is_monomial(alg: FinDGAlgebra) -> bool:
    return all(popcount(v) == 1 for v in alg.products.values())


def _words_table(alg: FinDGAlgebra, gens: list[int]) -> dict[int, tuple[int, ...]]:
    """Express every basis element as a product word in ``gens`` (monomial
    algebras only).  Returns basis index -> word of generator positions."""
    words: dict[int, tuple[int, ...]] = {i: () for i in alg.idempotents}
    frontier = []
    for g_pos, g in enumerate(gens):
        words[g] = (g_pos,)
        frontier.append(g)
    while frontier:
        nxt = []
        for b in frontier:
            for g_pos, g in enumerate(gens):
                p = alg.basis_mul(b, g)
                if p and popcount(p) == 1:
                    k = p.bit_length() - 1
                    if k not in words:
                        words[k] = words[b] + (g_pos,)
                        nxt.append(k)
        frontier = nxt
    return words


def find_isomorphism(a: FinDGAlgebra, b: FinDGAlgebra) -> dict[int, int] | None:
    """Search for a basis-to-basis isomorphism of monomial dg algebras.

    Canonical form: every basis element is a word in the irreducible
    elements.  We try each bijection of idempotents compatible with the
    irreducible-arrow counts, then each matching of irreducibles with
    compatible endpoints, extend multiplicatively, and verify the full
    structure.  Returns a map of basis indices of ``a`` to basis indices of
    ``b`` or None.
    """
    if a.dim != b.dim or len(a.idempotents) != len(b.idempotents):
        return None
    if not (_is_monomial(a) and _is_monomial(b)):
        raise AlgebraError("isomorphism search requires monomial products")
    ga, gb = irreducibles(a), irreducibles(b)
    if len(ga) != len(gb):
        return None
    wa = _words_table(a, ga)
    if len(wa) != a.dim:
        return None
    ne = len(a.idempotents)

    def arrow_counts(alg, gens):
        c: dict[tuple[int, int], int] = {}
        for g in gens:
            key = (alg.left[g], alg.right[g])
            c[key] = c.get(key, 0) + 1
        return c

    ca, cb = arrow_counts(a, ga), arrow_counts(b, gb)

    for perm in itertools.permutations(range(ne)):
        if any(cb.get((perm[s], perm[t]), 0) != n for (s, t), n in ca.items()):
            continue
        # candidate images for each irreducible of a
        options = [
            [h for h in gb if b.left[h] == perm[a.left[g]] and b.right[h] == perm[a.right[g]]]
            for g in ga
        ]
        for choice in _injective_choices(options):
            m = _extend(a, b, ga, choice, wa, perm)
            if m is not None:
                return m
    return None


def _injective_choices(options: list[list[int]]):
    used: set[int] = set()
    pick: list[int] = []

    def rec(k):
        if k == len(options):
            yield list(pick)
            return
        for h in options[k]:
            if h not in used:
                used.add(h)
                pick.append(h)
                yield from rec(k + 1)
                pick.pop()
                used.discard(h)

    yield from rec(0)


def _extend(a, b, ga, choice, wa, perm) -> dict[int, int] | None:
    img_gen = dict(zip(range(len(ga)), choice))
    m: dict[int, int] = {}
    for e, ie in enumerate(a.idempotents):
        m[ie] = b.idempotents[perm[e]]
    for k, word in wa.items():
        if not word:
            continue
        acc = 1 << img_gen[word[0]]
        for g_pos in word[1:]:
            acc = b.mul(acc, 1 << img_gen[g_pos])
        if popcount(acc) != 1:
            return None
        m[k] = acc.bit_length() - 1
    if len(set(m.values())) != a.dim:
        return None

    def push(x):
        out = 0
        for i in iter_bits(x):
            out ^= 1 << m[i]
        return out

    for i in range(a.dim):
        if push(a.diff[i]) != b.diff[m[i]]:
            return None
        for j in range(a.dim):
            if push(a.basis_mul(i, j)) != b.basis_mul(m[i], m[j]):
                return None
    return m


def algebra_to_dict(alg: FinDGAlgebra) -> dict:
    return {
        "name": alg.name,
        "basis": [
            {
                "label": str(lab),
                "left": str(alg.labels[alg.idempotents[alg.left[i]]]),
                "right": str(alg.labels[alg.idempotents[alg.right[i]]]),
                "degree": alg.degrees[i] if alg.degrees else 0,
            }
            for i, lab in enumerate(alg.labels)
        ],
        "mult": [
            [str(alg.labels[i]), str(alg.labels[j]), [str(alg.labels[k]) for k in iter_bits(v)]]
            for (i, j), v in sorted(alg.products.items())
        ],
        "diff": {
            str(alg.labels[i]): [str(alg.labels[k]) for k in iter_bits(v)]
            for i, v in enumerate(alg.diff)
            if v
        },
    }


def dump_lines(alg: FinDGAlgebra) -> list[str]:
    """One line per basis element: LABEL | left-idem | right-idem | degree."""
    out = []
    for i, lab in enumerate(alg.labels):
        deg = alg.degrees[i] if alg.degrees else 0
        out.append(
            f"{lab} | {alg.labels[alg.idempotents[alg.left[i]]]} | "
            f"{alg.labels[alg.idempotents[alg.right[i]]]} | {deg}"
        )
    return out
