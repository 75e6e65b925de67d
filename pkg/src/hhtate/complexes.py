"""Chain complexes, bicomplexes and their two spectral sequences over F2.

Conventions: a bicomplex has d_h : C[p,q] -> C[p-1,q] and
d_v : C[p,q] -> C[p,q-1].  The *vh* spectral sequence filters by column p,
so its E^1 page is column (vertical) homology; the *hv* spectral sequence
filters by row q, so its E^1 page is horizontal homology.

Pages are computed as subquotients of the total complex

    E^r_p = Z^r_p / (Z^{r-1}_{p-1} + D Z^{r-1}_{p+r-1}),
    Z^r_p = {x in F_p : Dx in F_{p-r}},

and independently by chasing zig-zag sequences (``sequence_page_dims``),
which the tests use as an oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .f2 import Echelon, F2Matrix, iter_bits, kernel_basis, rank, span_rank


class ComplexError(ValueError):
    """Structural problem: d^2 != 0, mismatched shapes, unbounded totals."""


class BoundednessError(ComplexError):
    pass


# ---------------------------------------------------------------------------
# graded complexes


@dataclass(frozen=True)
class Homology:
    dims: dict[int, int]
    representatives: dict[int, list[int]] | None = None

    @property
    def total(self) -> int:
        return sum(self.dims.values())


@dataclass(frozen=True, eq=False)
class GradedComplex:
    """``d[n]`` maps degree n to degree n-1 (rows = dim(n-1), cols = dim(n))."""

    basis: Mapping[int, tuple]
    d: Mapping[int, F2Matrix]

    def __post_init__(self):
        for n, m in self.d.items():
            if m.cols != self.dim(n) or m.rows != self.dim(n - 1):
                raise ComplexError(f"differential out of degree {n} has shape {m.rows}x{m.cols}")
        for n in self.d:
            if n - 1 in self.d and not (self.d[n - 1] @ self.d[n]).is_zero():
                raise ComplexError(f"d^2 != 0 from degree {n}")

    @classmethod
    def from_sparse(cls, basis: Mapping[int, Sequence], d: Mapping[int, Sequence[Sequence[int]]]):
        """``d[n]`` lists, for each basis element of degree n, the row indices
        (in degree n-1) of its boundary."""
        basis = {int(n): tuple(b) for n, b in basis.items()}
        mats = {}
        for n, cols in d.items():
            n = int(n)
            rows = len(basis.get(n - 1, ()))
            if len(cols) != len(basis.get(n, ())):
                raise ComplexError(f"degree {n}: {len(cols)} columns for {len(basis.get(n, ()))} basis elements")
            entries = [(r, j) for j, col in enumerate(cols) for r in col]
            mats[n] = F2Matrix.from_entries(rows, len(cols), entries)
        return cls(basis, mats)

    @classmethod
    def from_json(cls, text: str) -> "GradedComplex":
        raw = json.loads(text)
        degrees = [int(x) for x in raw["degrees"]]
        basis = {n: raw["basis"].get(str(n), []) for n in degrees}
        return cls.from_sparse(basis, {int(n): v for n, v in raw.get("d", {}).items()})

    def to_json(self) -> str:
        d = {}
        for n, m in sorted(self.d.items()):
            d[str(n)] = [list(iter_bits(c)) for c in m.columns()]
        return json.dumps(
            {
                "degrees": sorted(self.basis),
                "basis": {str(n): list(map(str, b)) for n, b in sorted(self.basis.items())},
                "d": d,
            }
        )

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def diff(self, n: int) -> F2Matrix:
        m = self.d.get(n)
        return m if m is not None else F2Matrix.zeros(self.dim(n - 1), self.dim(n))

    def homology(self, with_representatives: bool = False) -> Homology:
        dims = {}
        reps = {} if with_representatives else None
        for n in self.degrees:
            dn = self.diff(n)
            up = self.diff(n + 1)
            if not with_representatives:
                dims[n] = self.dim(n) - rank(dn) - rank(up)
                continue
            ech = Echelon()
            for c in up.columns():
                ech.add(c)
            chosen = []
            for v in kernel_basis(dn):
                if ech.add(v.bits):
                    chosen.append(v.bits)
            dims[n] = len(chosen)
            reps[n] = chosen
        return Homology(dims, reps)


def homology(c: GradedComplex, with_representatives: bool = False) -> Homology:
    return c.homology(with_representatives)


# ---------------------------------------------------------------------------
# bicomplexes


class BicomplexLike:
    """Interface shared by finite and periodic bicomplexes."""

    def dim(self, p: int, q: int) -> int:
        raise NotImplementedError

    def h(self, p: int, q: int) -> F2Matrix:
        """d_h out of (p, q)."""
        raise NotImplementedError

    def v(self, p: int, q: int) -> F2Matrix:
        """d_v out of (p, q)."""
        raise NotImplementedError

    def q_range(self) -> range:
        raise NotImplementedError

    def transpose(self) -> "BicomplexLike":
        return _Transposed(self)


@dataclass(eq=False)
class Bicomplex(BicomplexLike):
    """Finitely many nonzero cells.  Missing maps are zero."""

    cells: Mapping[tuple[int, int], tuple]
    d_h: Mapping[tuple[int, int], F2Matrix] = field(default_factory=dict)
    d_v: Mapping[tuple[int, int], F2Matrix] = field(default_factory=dict)
    column_bound: bool = True

    def __post_init__(self):
        for (p, q), m in self.d_h.items():
            if (m.rows, m.cols) != (self.dim(p - 1, q), self.dim(p, q)):
                raise ComplexError(f"d_h at {(p, q)} has the wrong shape")
        for (p, q), m in self.d_v.items():
            if (m.rows, m.cols) != (self.dim(p, q - 1), self.dim(p, q)):
                raise ComplexError(f"d_v at {(p, q)} has the wrong shape")
        for p, q in self.cells:
            if not (self.h(p - 1, q) @ self.h(p, q)).is_zero():
                raise ComplexError(f"d_h^2 != 0 at {(p, q)}")
            if not (self.v(p, q - 1) @ self.v(p, q)).is_zero():
                raise ComplexError(f"d_v^2 != 0 at {(p, q)}")
            if not ((self.h(p, q - 1) @ self.v(p, q)) + (self.v(p - 1, q) @ self.h(p, q))).is_zero():
                raise ComplexError(f"d_h and d_v do not commute at {(p, q)}")

    def dim(self, p, q):
        return len(self.cells.get((p, q), ()))

    def h(self, p, q):
        m = self.d_h.get((p, q))
        return m if m is not None else F2Matrix.zeros(self.dim(p - 1, q), self.dim(p, q))

    def v(self, p, q):
        m = self.d_v.get((p, q))
        return m if m is not None else F2Matrix.zeros(self.dim(p, q - 1), self.dim(p, q))

    def q_range(self):
        qs = [q for (_, q) in self.cells] or [0]
        return range(min(qs), max(qs) + 1)

    def p_range(self):
        ps = [p for (p, _) in self.cells] or [0]
        return range(min(ps), max(ps) + 1)


@dataclass(eq=False)
class PeriodicBicomplex(BicomplexLike):
    """Every column is the same complex ``column`` (graded by q); every
    horizontal map is ``horizontal``, a chain map of the column commuting
    with its differential and squaring to zero.  Period 1 in p, which is
    what the 2-periodic Tate construction becomes over F2."""

    column: GradedComplex
    horizontal: Mapping[int, F2Matrix]
    period: int = 1
    column_bound: bool = True

    def __post_init__(self):
        for q in self.column.degrees:
            hq = self.h(0, q)
            if not (hq @ hq).is_zero():
                raise ComplexError(f"horizontal map does not square to zero in row {q}")
            if not ((self.column.diff(q) @ hq) + (self.h(0, q - 1) @ self.column.diff(q))).is_zero():
                raise ComplexError(f"horizontal map is not a chain map in row {q}")

    def dim(self, p, q):
        return self.column.dim(q)

    def h(self, p, q):
        m = self.horizontal.get(q)
        return m if m is not None else F2Matrix.zeros(self.dim(p, q), self.dim(p, q))

    def v(self, p, q):
        return self.column.diff(q)

    def q_range(self):
        ds = self.column.degrees or [0]
        return range(min(ds), max(ds) + 1)


@dataclass(eq=False)
class _Transposed(BicomplexLike):
    base: BicomplexLike

    def dim(self, p, q):
        return self.base.dim(q, p)

    def h(self, p, q):
        return self.base.v(q, p)

    def v(self, p, q):
        return self.base.h(q, p)

    def q_range(self):
        return self.base.p_range()

    def p_range(self):
        return self.base.q_range()


# ---------------------------------------------------------------------------
# total complexes and filtered complexes


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    """Three consecutive degrees n+1, n, n-1 of a complex with a filtration
    index on each coordinate; D must not raise the index."""

    dims: Mapping[int, int]
    d: Mapping[int, F2Matrix]
    index: Mapping[int, tuple[int, ...]]
    cell: Mapping[int, tuple[tuple[int, int, int], ...]]

    def fil(self, n: int, p: int) -> int:
        """Bitmask of coordinates in degree n with index <= p."""
        out = 0
        for i, ix in enumerate(self.index[n]):
            if ix <= p:
                out |= 1 << i
        return out


def _tot_layout(b: BicomplexLike, n: int, ps: Iterable[int]):
    """Coordinates of Tot_n: list of (p, q, i)."""
    out = []
    for p in ps:
        q = n - p
        for i in range(b.dim(p, q)):
            out.append((p, q, i))
    return out


def _tot_map(b: BicomplexLike, src, dst) -> F2Matrix:
    pos = {c: j for j, c in enumerate(dst)}
    entries = []
    cache = {}
    for j, (p, q, i) in enumerate(src):
        if (p, q) not in cache:
            cache[p, q] = (b.h(p, q).columns() if b.dim(p - 1, q) else None,
                           b.v(p, q).columns() if b.dim(p, q - 1) else None)
        hc, vc = cache[p, q]
        if hc is not None:
            for r in iter_bits(hc[i]):
                entries.append((pos[(p - 1, q, r)], j))
        if vc is not None:
            for r in iter_bits(vc[i]):
                entries.append((pos[(p, q - 1, r)], j))
    return F2Matrix.from_entries(len(dst), len(src), entries)


def _p_window(b: BicomplexLike, n: int) -> list[int]:
    qs = b.q_range()
    return [n - q for q in qs]


def total_complex(b: BicomplexLike, degrees: Iterable[int] | None = None) -> GradedComplex:
    """Tot_n = sum over p + q = n, with D = d_h + d_v.

    For a periodic bicomplex ``degrees`` selects a finite window; every
    degree looks the same.
    """
    if not getattr(b, "column_bound", True):
        raise BoundednessError("an anti-diagonal has infinitely many nonzero cells")
    if degrees is None:
        if isinstance(b, Bicomplex):
            sums = [p + q for (p, q) in b.cells] or [0]
            degrees = range(min(sums), max(sums) + 1)
        else:
            degrees = range(-1, 2)
    degrees = list(degrees)
    layouts = {n: _tot_layout(b, n, _p_window(b, n)) for n in set(degrees) | {n - 1 for n in degrees}}
    basis = {n: tuple(layouts[n]) for n in degrees}
    d = {}
    for n in degrees:
        if n - 1 in basis:
            d[n] = _tot_map(b, layouts[n], layouts[n - 1])
    return GradedComplex(basis, d)


def total_homology_dims(b: BicomplexLike, degrees: Iterable[int] | None = None) -> dict[int, int]:
    if isinstance(b, PeriodicBicomplex):
        return {n: periodic_total_homology(b) for n in (degrees or [0])}
    if degrees is None:
        sums = [p + q for (p, q) in b.cells] or [0]
        degrees = range(min(sums), max(sums) + 1)
    out = {}
    for n in degrees:
        lay = {m: _tot_layout(b, m, _p_window(b, m)) for m in (n - 1, n, n + 1)}
        dn = _tot_map(b, lay[n], lay[n - 1])
        up = _tot_map(b, lay[n + 1], lay[n])
        out[n] = len(lay[n]) - rank(dn) - rank(up)
    return out


def periodic_total_homology(b: PeriodicBicomplex) -> int:
    """Every Tot_n is the whole column with D = h + d, so H = ker D / im D."""
    c = b.column
    offs = {}
    total = 0
    for q in c.degrees:
        offs[q] = total
        total += c.dim(q)
    entries = []
    for q in c.degrees:
        hc = b.h(0, q).columns()
        vc = c.diff(q).columns() if c.dim(q - 1) else None
        for i in range(c.dim(q)):
            for r in iter_bits(hc[i]):
                entries.append((offs[q] + r, offs[q] + i))
            if vc is not None:
                for r in iter_bits(vc[i]):
                    entries.append((offs[q - 1] + r, offs[q] + i))
    big = F2Matrix.from_entries(total, total, entries)
    if not (big @ big).is_zero():
        raise ComplexError("h + d does not square to zero")
    return total - 2 * rank(big)


def filtered_window(b: BicomplexLike, n: int, orientation: str) -> FilteredComplex:
    """Degrees n+1, n, n-1 of Tot with the filtration for ``orientation``:
    'vh' filters by p, 'hv' by q."""
    if orientation not in ("vh", "hv"):
        raise ValueError("orientation must be 'vh' or 'hv'")
    lay = {m: _tot_layout(b, m, _p_window(b, m)) for m in (n - 1, n, n + 1)}
    d = {n + 1: _tot_map(b, lay[n + 1], lay[n]), n: _tot_map(b, lay[n], lay[n - 1])}
    pick = 0 if orientation == "vh" else 1
    index = {m: tuple(c[pick] for c in lay[m]) for m in lay}
    return FilteredComplex({m: len(lay[m]) for m in lay}, d, index, {m: tuple(lay[m]) for m in lay})


# ---------------------------------------------------------------------------
# spectral pages


@dataclass(frozen=True)
class PageGroup:
    dim: int
    representatives: tuple[int, ...]


@dataclass(frozen=True)
class SpectralPage:
    orientation: str
    r: int
    groups: dict[tuple[int, int], PageGroup]
    differentials: dict[tuple[int, int], F2Matrix]

    def dims(self) -> dict[tuple[int, int], int]:
        return {k: g.dim for k, g in self.groups.items() if g.dim}

    def antidiagonal_total(self, n: int) -> int:
        return sum(g.dim for (p, q), g in self.groups.items() if p + q == n)


def _z(fc: FilteredComplex, n: int, p: int, r: int) -> list[int]:
    """Basis (bitmasks in degree n) of Z^r_p = {x in F_p : Dx in F_{p-r}}."""
    src = [i for i, ix in enumerate(fc.index[n]) if ix <= p]
    if not src:
        return []
    if n not in fc.d:
        raise ComplexError("degree outside the window")
    cols = fc.d[n].columns()
    high = [k for k, ix in enumerate(fc.index[n - 1]) if ix > p - r]
    hpos = {k: t for t, k in enumerate(high)}
    restricted = []
    for i in src:
        v = 0
        for k in iter_bits(cols[i]):
            if k in hpos:
                v |= 1 << hpos[k]
        restricted.append(v)
    m = F2Matrix.from_columns(len(high), restricted)
    out = []
    for vec in kernel_basis(m):
        x = 0
        for t in iter_bits(vec.bits):
            x |= 1 << src[t]
        out.append(x)
    return out


def _page_at(fc: FilteredComplex, n: int, p: int, r: int):
    """(denominator basis, representatives) of E^r_p in degree n."""
    den = Echelon()
    for v in _z(fc, n, p - 1, r - 1):
        den.add(v)
    cols = fc.d[n + 1].columns()
    for y in _z(fc, n + 1, p + r - 1, r - 1):
        dy = 0
        for j in iter_bits(y):
            dy ^= cols[j]
        den.add(dy)
    den_basis = [v for v, _ in den.pivots.values()]
    reps = []
    for x in _z(fc, n, p, r):
        if den.add(x):
            reps.append(x)
    return den_basis, reps


def _page_from_window(fc: FilteredComplex, n: int, r: int, with_differential: bool, fc_low=None):
    indices = sorted(set(fc.index[n]))
    groups = {}
    diffs = {}
    for p in indices:
        _, reps = _page_at(fc, n, p, r)
        groups[p] = PageGroup(len(reps), tuple(reps))
        if with_differential and reps and fc_low is not None:
            den2, reps2 = _page_at(fc_low, n - 1, p - r, r)
            # express D(rep) in the basis reps2 modulo den2
            base = Echelon()
            for v in den2:
                base.add(v)
            start = base.count
            for v in reps2:
                base.add(v)
            cols = fc.d[n].columns()
            images = []
            for x in reps:
                dx = 0
                for j in iter_bits(x):
                    dx ^= cols[j]
                tag = base.express(dx)
                if tag is None:
                    raise ComplexError("page differential left the next page")
                images.append(tag >> start)
            diffs[p] = F2Matrix.from_columns(len(reps2), images)
    return groups, diffs


def spectral_page(b: BicomplexLike, orientation: str, r: int, degrees: Iterable[int] | None = None,
                  with_differential: bool = True) -> SpectralPage:
    """E^r of the vh (filter by p) or hv (filter by q) spectral sequence.

    Groups are keyed by (p, q) in the original bicomplex coordinates.  For a
    periodic bicomplex one total degree (default 0) is computed and p-shift
    invariance is asserted against the neighbouring degree.
    """
    if r < 0:
        raise ValueError("page index must be >= 0")
    periodic = isinstance(b, PeriodicBicomplex)
    if degrees is None:
        if periodic:
            degrees = [0]
        else:
            sums = [p + q for (p, q) in b.cells] or [0]
            degrees = range(min(sums), max(sums) + 1)
    groups = {}
    diffs = {}
    for n in degrees:
        fc = filtered_window(b, n, orientation)
        low = filtered_window(b, n - 1, orientation) if with_differential else None
        g, dd = _page_from_window(fc, n, r, with_differential, low)
        for idx, grp in g.items():
            key = (idx, n - idx) if orientation == "vh" else (n - idx, idx)
            groups[key] = grp
            if idx in dd:
                diffs[key] = dd[idx]
    if periodic:
        _assert_shift_invariant(b, orientation, r, degrees, groups)
    return SpectralPage(orientation, r, groups, diffs)


def _assert_shift_invariant(b, orientation, r, degrees, groups):
    for n in degrees:
        fc = filtered_window(b, n + 1, orientation)
        g, _ = _page_from_window(fc, n + 1, r, False)
        for idx, grp in g.items():
            key = (idx, n + 1 - idx) if orientation == "vh" else (n + 1 - idx, idx)
            q = key[1]
            prev = groups.get((key[0] - 1, q))
            if prev is not None and prev.dim != grp.dim:
                raise ComplexError(f"periodic page is not translation invariant at q={q}")


def infinity_page(b: BicomplexLike, orientation: str, degrees=None) -> SpectralPage:
    """E^r for r past the filtration length, where the sequence has converged."""
    if isinstance(b, PeriodicBicomplex) or orientation == "hv":
        span = len(b.q_range())
    else:
        span = len(b.p_range())
    return spectral_page(b, orientation, span + 1, degrees, with_differential=False)


# ---------------------------------------------------------------------------
# the zig-zag sequence oracle


def _chain_solutions(b: BicomplexLike, cells: list[tuple[int, int]]) -> list[list[int]]:
    """All sequences (x_1, ..., x_s) with x_i in cells[i], d_v x_1 = 0 and
    d_h x_i = d_v x_{i+1}; returned as a basis, each element split by cell.

    Each successive cell is one step left and one step up, as in a
    vh zig-zag.
    """
    sizes = [b.dim(p, q) for p, q in cells]
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    total = offs[-1]
    # equations: one block per constraint
    eq_cols = [0] * total
    row = 0
    p1, q1 = cells[0]
    vc = b.v(p1, q1).columns()
    nrows = b.dim(p1, q1 - 1)
    for i in range(sizes[0]):
        eq_cols[offs[0] + i] |= vc[i] << row
    row += nrows
    for k in range(len(cells) - 1):
        (p, q), (p2, q2) = cells[k], cells[k + 1]
        hc = b.h(p, q).columns()
        vc2 = b.v(p2, q2).columns()
        nrows = b.dim(p - 1, q)
        for i in range(sizes[k]):
            eq_cols[offs[k] + i] |= hc[i] << row
        for i in range(sizes[k + 1]):
            eq_cols[offs[k + 1] + i] ^= vc2[i] << row
        row += nrows
    m = F2Matrix.from_columns(row, eq_cols)
    out = []
    for vec in kernel_basis(m):
        parts = []
        for k in range(len(cells)):
            parts.append((vec.bits >> offs[k]) & ((1 << sizes[k]) - 1))
        out.append(parts)
    return out


def sequence_page_dims(b: BicomplexLike, orientation: str, r: int, cells: Iterable[tuple[int, int]]) -> dict:
    """dim E^r_{p,q} from zig-zag sequences, r >= 1.

    For vh: x survives to E^r iff it starts a length-r sequence
    x_1 = x, x_{i+1} in C[p-i, q+i] with d_v x_1 = 0 and d_h x_i = d_v x_{i+1};
    it is killed by im d_v and by d_h y_s for every length-s sequence
    (s < r) ending in C[p+1, q].  hv is the same on the transpose.
    """
    if r < 1:
        raise ValueError("the sequence oracle starts at E^1")
    bb = b if orientation == "vh" else b.transpose()
    out = {}
    for key in cells:
        p, q = key if orientation == "vh" else (key[1], key[0])
        if bb.dim(p, q) == 0:
            out[key] = 0
            continue
        chain = [(p - i, q + i) for i in range(r)]
        z = [parts[0] for parts in _chain_solutions(bb, chain)]
        bnd = list(bb.v(p, q + 1).columns()) if bb.dim(p, q + 1) else []
        for s in range(1, r):
            start = [(p + s - i, q - s + 1 + i) for i in range(s)]
            hc = bb.h(p + 1, q).columns()
            for parts in _chain_solutions(bb, start):
                y = parts[-1]
                img = 0
                for j in iter_bits(y):
                    img ^= hc[j]
                bnd.append(img)
        zr = span_rank(z)
        br = span_rank(bnd)
        if span_rank(z + bnd) != zr:
            raise ComplexError(f"boundaries escape cycles at {key}")
        out[key] = zr - br
    return out
