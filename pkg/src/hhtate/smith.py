"""Cell complexes with a cellular involution, and classical Z/2 localization.

The Tate complex of (X, tau) is the periodic bicomplex whose every column
is C_*(X; F2) and whose horizontal maps are 1 + tau.  Its homology in each
degree should equal the total homology of the fixed set, and the vh
spectral sequence (E^1 = H_*(X) in every column) gives the Smith
inequality dim H_*(X^fix) <= dim H_*(X).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Sequence

from .complexes import GradedComplex, PeriodicBicomplex, periodic_total_homology, spectral_page
from .f2 import F2Matrix


class CellComplexError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DeltaComplexWithInvolution:
    """``boundary[n][j]`` lists the faces (indices into cells[n-1]) of cell j
    in dimension n; ``involution[n]`` is a permutation of cells[n]."""

    cells: Mapping[int, tuple[str, ...]]
    boundary: Mapping[int, tuple[tuple[int, ...], ...]]
    involution: Mapping[int, tuple[int, ...]]
    name: str = ""

    def __post_init__(self):
        for n, labels in self.cells.items():
            perm = self.involution.get(n, tuple(range(len(labels))))
            if sorted(perm) != list(range(len(labels))):
                raise CellComplexError(f"involution in dimension {n} is not a permutation")
            if any(perm[perm[j]] != j for j in range(len(perm))):
                raise CellComplexError(f"map in dimension {n} does not square to the identity")
        for n, cols in self.boundary.items():
            if len(cols) != len(self.cells.get(n, ())):
                raise CellComplexError(f"boundary in dimension {n}: {len(cols)} entries for {len(self.cells.get(n, ()))} cells")
            for j, faces in enumerate(cols):
                for f in faces:
                    if not 0 <= f < len(self.cells.get(n - 1, ())):
                        raise CellComplexError(f"cell {self.cells[n][j]} has a face index {f} out of range")
        c = self.chain_complex()  # checks d^2 = 0
        for n in self.dims:
            t_lo, t_hi = self.tau_matrix(n - 1), self.tau_matrix(n)
            if not ((c.diff(n) @ t_hi) + (t_lo @ c.diff(n))).is_zero():
                raise CellComplexError(f"involution does not commute with the boundary in dimension {n}")
        for n in self.dims:
            perm = self.perm(n)
            for j, faces in enumerate(self.boundary.get(n, ())):
                if perm[j] == j and any(self.perm(n - 1)[f] != f for f in faces):
                    raise CellComplexError(
                        f"cell {self.cells[n][j]} is mapped to itself but its boundary is not fixed; "
                        "subdivide it so the involution fixes cells pointwise"
                    )

    @property
    def dims(self) -> list[int]:
        return sorted(self.cells)

    def perm(self, n: int) -> tuple[int, ...]:
        return tuple(self.involution.get(n, range(len(self.cells.get(n, ())))))

    def tau_matrix(self, n: int) -> F2Matrix:
        k = len(self.cells.get(n, ()))
        perm = self.perm(n)
        return F2Matrix.from_entries(k, k, ((perm[j], j) for j in range(k)))

    def chain_complex(self) -> GradedComplex:
        basis = {n: tuple(self.cells[n]) for n in self.cells}
        d = {n: [list(faces) for faces in cols] for n, cols in self.boundary.items() if n - 1 in self.cells}
        return GradedComplex.from_sparse(basis, d)

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "DeltaComplexWithInvolution":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CellComplexError(f"not valid JSON: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        for key in ("cells", "boundary"):
            if key not in raw:
                raise CellComplexError(f"missing field '{key}'")
        try:
            cells = {int(n): tuple(map(str, v)) for n, v in raw["cells"].items()}
            boundary = {int(n): tuple(tuple(int(f) for f in col) for col in v) for n, v in raw["boundary"].items()}
            involution = {int(n): tuple(int(x) for x in v) for n, v in raw.get("involution", {}).items()}
        except (TypeError, ValueError, AttributeError) as exc:
            raise CellComplexError(f"malformed field: {exc}") from None
        return cls(cells, boundary, involution, name=raw.get("name", name))

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "cells": {str(n): list(v) for n, v in sorted(self.cells.items())},
                "boundary": {str(n): [list(c) for c in v] for n, v in sorted(self.boundary.items())},
                "involution": {str(n): list(self.perm(n)) for n in self.dims},
            },
            indent=1,
        )


def fixed_subcomplex(x: DeltaComplexWithInvolution) -> DeltaComplexWithInvolution:
    keep = {n: [j for j in range(len(x.cells[n])) if x.perm(n)[j] == j] for n in x.dims}
    pos = {n: {j: t for t, j in enumerate(keep[n])} for n in keep}
    cells = {n: tuple(x.cells[n][j] for j in keep[n]) for n in keep}
    boundary = {}
    for n, cols in x.boundary.items():
        out = []
        for j in keep.get(n, ()):
            faces = cols[j]
            if any(f not in pos[n - 1] for f in faces):
                raise CellComplexError(f"fixed cell {x.cells[n][j]} has a face outside the fixed set")
            out.append(tuple(pos[n - 1][f] for f in faces))
        boundary[n] = tuple(out)
    return DeltaComplexWithInvolution(cells, boundary, {}, name=f"fix({x.name})")


def tate_bicomplex(x: DeltaComplexWithInvolution) -> PeriodicBicomplex:
    c = x.chain_complex()
    horizontal = {}
    for n in x.dims:
        k = len(x.cells[n])
        horizontal[n] = x.tau_matrix(n) + F2Matrix.identity(k)
    return PeriodicBicomplex(c, horizontal)


def tate_homology(x: DeltaComplexWithInvolution) -> int:
    """Dimension of the Tate homology in each (every) total degree."""
    return periodic_total_homology(tate_bicomplex(x))


def total_homology(x: DeltaComplexWithInvolution) -> int:
    return x.chain_complex().homology().total


@dataclass(frozen=True)
class LocalizationResult:
    tate: int
    fixed: int

    @property
    def holds(self) -> bool:
        return self.tate == self.fixed


def localization_check(x: DeltaComplexWithInvolution) -> LocalizationResult:
    return LocalizationResult(tate_homology(x), total_homology(fixed_subcomplex(x)))


@dataclass(frozen=True)
class SmithResult:
    fixed_total: int
    total: int
    vh_e1: dict[int, int]

    @property
    def holds(self) -> bool:
        return self.fixed_total <= self.total


def smith_inequality_check(x: DeltaComplexWithInvolution) -> SmithResult:
    page = spectral_page(tate_bicomplex(x), "vh", 1, with_differential=False)
    e1 = {q: g.dim for (p, q), g in page.groups.items() if g.dim}
    return SmithResult(total_homology(fixed_subcomplex(x)), total_homology(x), e1)


# ---------------------------------------------------------------------------
# bundled corpus


def corpus_names() -> list[str]:
    root = resources.files("hhtate") / "data" / "complexes"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_corpus(name: str) -> DeltaComplexWithInvolution:
    root = resources.files("hhtate") / "data" / "complexes"
    return DeltaComplexWithInvolution.from_json((root / f"{name}.json").read_text(), name=name)


def load_complex(path: str) -> DeltaComplexWithInvolution:
    with open(path, encoding="utf-8") as fh:
        return DeltaComplexWithInvolution.from_json(fh.read(), name=path)


def build(cells: Mapping[int, Sequence[str]], boundary: Mapping[int, Sequence[Sequence[int]]],
          involution: Mapping[int, Sequence[int]] | None = None, name: str = "") -> DeltaComplexWithInvolution:
    return DeltaComplexWithInvolution(
        {n: tuple(v) for n, v in cells.items()},
        {n: tuple(tuple(c) for c in v) for n, v in boundary.items()},
        {n: tuple(v) for n, v in (involution or {}).items()},
        name=name,
    )
