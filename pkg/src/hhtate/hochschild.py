"""Small chain models for Hochschild complexes of Koszul-type dual pairs.

Every model here has the same shape.  Two algebras ``X`` and ``Y`` are
given together with a bijection between their idempotents and a list of
generator pairs (xi, xi') with xi in X and xi' in Y.  A word of period 2 is
``x|y`` and a word of period 4 is ``x1|y1|x2|y2``, factors alternating
between X and Y.  Words must close up cyclically: at an X|Y junction the
left idempotent of the Y factor matches the right idempotent of the X
factor, and at a Y|X junction the right idempotent of the Y factor matches
the left idempotent of the X factor.  The differential inserts a generator
pair at each junction::

    ... x | y ...  ->  ... x xi | xi' y ...
    ... y | x ...  ->  ... y xi' | xi x ...

plus, optionally, the internal differential of each factor.  Products
that do not land in a consistent word vanish (we tensor over idempotents).

Words are tuples of basis indices.  Sparse vectors over F2 are Python sets
of words.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .algebra import FinDGAlgebra
from .complexes import GradedComplex
from .f2 import F2Matrix, iter_bits
from .quiver import extreme_algebra, extreme_generator_pairs, quadratic_dual_extreme
from .strands import PointedMatchedCircle, chord_elements, idempotent_pairs, matched_algebra

Word = tuple[int, ...]


class ModelError(ValueError):
    """A model fails d^2 = 0 or a grading is inconsistent."""


def xor_into(acc: set, items: Iterable) -> set:
    for w in items:
        if w in acc:
            acc.remove(w)
        else:
            acc.add(w)
    return acc


@dataclass(eq=False)
class PairedAlgebras:
    """The data from which both the period-2 and period-4 models are built."""

    first: FinDGAlgebra
    second: FinDGAlgebra
    idem_map: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    internal_diff: bool = True
    name: str = ""
    second_grading: tuple[int, ...] | None = None

    def __post_init__(self):
        if sorted(self.idem_map) != list(range(len(self.second.idempotents))):
            raise ModelError("idempotent identification must be a bijection")
        if len(self.idem_map) != len(self.first.idempotents):
            raise ModelError("algebras have different numbers of idempotents")

    # factor tables -----------------------------------------------------

    @cached_property
    def _tables(self):
        X, Y = self.first, self.second
        xr = [tuple(X.mul(1 << x, xi) for xi, _ in self.pairs) for x in range(X.dim)]
        xl = [tuple(X.mul(xi, 1 << x) for xi, _ in self.pairs) for x in range(X.dim)]
        yl = [tuple(Y.mul(yi, 1 << y) for _, yi in self.pairs) for y in range(Y.dim)]
        yr = [tuple(Y.mul(1 << y, yi) for _, yi in self.pairs) for y in range(Y.dim)]
        return xr, xl, yl, yr

    @cached_property
    def _rank(self):
        """Position of every basis label in sorted label order, per factor."""
        out = []
        for alg in (self.first, self.second):
            order = sorted(range(alg.dim), key=lambda i: str(alg.labels[i]))
            r = [0] * alg.dim
            for pos, i in enumerate(order):
                r[i] = pos
            out.append(tuple(r))
        return tuple(out)

    def sort_key(self, w: Word) -> tuple[int, ...]:
        rx, ry = self._rank
        return tuple(rx[f] if i % 2 == 0 else ry[f] for i, f in enumerate(w))

    def _mapped(self, x_idem: int) -> int:
        return self.idem_map[x_idem]

    def is_consistent(self, w: Word) -> bool:
        X, Y = self.first, self.second
        n = len(w)
        for i in range(n):
            a, b = w[i], w[(i + 1) % n]
            if i % 2 == 0:
                if Y.left[b] != self.idem_map[X.right[a]]:
                    return False
            elif Y.right[a] != self.idem_map[X.left[b]]:
                return False
        return True

    # enumeration --------------------------------------------------------

    @cached_property
    def _blocks(self):
        X, Y = self.first, self.second
        xb = defaultdict(list)
        for x in range(X.dim):
            xb[X.left[x], X.right[x]].append(x)
        yb = defaultdict(list)
        for y in range(Y.dim):
            yb[Y.left[y], Y.right[y]].append(y)
        x_from = defaultdict(list)
        for x in range(X.dim):
            x_from[X.left[x]].append(x)
        return xb, yb, x_from

    def iter_words(self, period: int) -> Iterator[Word]:
        """All consistent words of the given period (unsorted)."""
        X, Y = self.first, self.second
        xb, yb, x_from = self._blocks
        inv = {v: u for u, v in enumerate(self.idem_map)}
        if period == 2:
            for x in range(X.dim):
                for y in yb.get((self.idem_map[X.right[x]], self.idem_map[X.left[x]]), ()):
                    yield (x, y)
            return
        if period != 4:
            raise ValueError("period must be 2 or 4")
        by_left_y = defaultdict(list)
        for y in range(Y.dim):
            by_left_y[Y.left[y]].append(y)
        for x1 in range(X.dim):
            for y1 in by_left_y[self.idem_map[X.right[x1]]]:
                for x2 in x_from[inv[Y.right[y1]]]:
                    target = (self.idem_map[X.right[x2]], self.idem_map[X.left[x1]])
                    for y2 in yb.get(target, ()):
                        yield (x1, y1, x2, y2)

    def count_words(self, period: int) -> int:
        """Word count without enumerating: the trace of a product of block-size matrices."""
        X, Y = self.first, self.second
        ne = len(self.idem_map)
        inv = {v: u for u, v in enumerate(self.idem_map)}
        mx = [[0] * ne for _ in range(ne)]
        for x in range(X.dim):
            mx[X.left[x]][X.right[x]] += 1
        # my[I][J] = number of Y elements from the image of I to the image of J
        my = [[0] * ne for _ in range(ne)]
        for y in range(Y.dim):
            my[inv[Y.left[y]]][inv[Y.right[y]]] += 1
        t = [[sum(mx[i][k] * my[k][j] for k in range(ne)) for j in range(ne)] for i in range(ne)]
        if period == 2:
            return sum(t[i][i] for i in range(ne))
        return sum(t[i][k] * t[k][i] for i in range(ne) for k in range(ne))

    def words(self, period: int) -> list[Word]:
        """Consistent words in canonical (label-lexicographic) order."""
        return sorted(self.iter_words(period), key=self.sort_key)

    def unit_word_sum(self, period: int) -> set:
        """(1|1) or (1|1|1|1): the sum of all consistent all-idempotent words."""
        X, Y = self.first, self.second
        out = set()
        for e, xi in enumerate(X.idempotents):
            yi = Y.idempotents[self.idem_map[e]]
            w = (xi, yi) * (period // 2)
            if self.is_consistent(w):
                out.add(w)
        return out

    # differential -------------------------------------------------------

    def boundary_terms(self, w: Word) -> list[Word]:
        """Terms of the differential of one word, with repetitions."""
        X, Y = self.first, self.second
        xr, xl, yl, yr = self._tables
        n = len(w)
        out = []
        for i in range(n):
            j = (i + 1) % n
            a, b = w[i], w[j]
            if i % 2 == 0:
                lefts, rights = xr[a], yl[b]
            else:
                lefts, rights = yr[a], xl[b]
            for p in range(len(self.pairs)):
                la, rb = lefts[p], rights[p]
                if not la or not rb:
                    continue
                rb_bits = list(iter_bits(rb))
                for na in iter_bits(la):
                    for nb in rb_bits:
                        new = list(w)
                        new[i], new[j] = na, nb
                        t = tuple(new)
                        if self.is_consistent(t):
                            out.append(t)
        if self.internal_diff:
            for i in range(n):
                alg = X if i % 2 == 0 else Y
                for na in iter_bits(alg.diff[w[i]]):
                    new = list(w)
                    new[i] = na
                    out.append(tuple(new))
        return out

    def boundary(self, vec: Iterable[Word]) -> set:
        acc: set = set()
        for w in vec:
            xor_into(acc, self.boundary_terms(w))
        return acc

    # grading ------------------------------------------------------------

    def factor_grading(self, w: Word) -> int | None:
        """Sum of the declared grades of the Y factors, if declared."""
        g = self.second_grading
        if g is None:
            return None
        return sum(g[f] for f in w[1::2])

    def label(self, w: Word) -> str:
        X, Y = self.first, self.second
        return "|".join(str((X if i % 2 == 0 else Y).labels[f]) for i, f in enumerate(w))


# ---------------------------------------------------------------------------
# the two families


def extreme_pairing(k: int) -> PairedAlgebras:
    """(A, B) from the path-algebra presentations; idempotents matched by vertex."""
    A, B = extreme_algebra(k), quadratic_dual_extreme(k)
    pairs = tuple((A.element(x), B.element(y)) for x, y in extreme_generator_pairs(k))
    grading = tuple(-_path_length(lab, B) for lab in B.labels)
    return PairedAlgebras(
        A, B, tuple(range(2 * k)), pairs, internal_diff=False, name=f"extreme(k={k})", second_grading=grading
    )


def _path_length(label, alg: FinDGAlgebra) -> int:
    if alg.index(label) in alg.idempotents:
        return 0
    return len(str(label).split("*"))


def diagonal_pairing(z: PointedMatchedCircle, weight: int, internal_diff: bool = True) -> PairedAlgebras:
    """A(Z, i) against A(Z, -i); an idempotent of the first factor is matched
    with the idempotent occupying the complementary set of matched pairs."""
    X = matched_algebra(z, weight)
    Y = matched_algebra(z, -weight)
    xs = idempotent_pairs(z, weight)
    ys = {S: e for e, S in enumerate(idempotent_pairs(z, -weight))}
    everything = set(range(len(z.pairs)))
    idem_map = tuple(ys[tuple(sorted(everything - set(S)))] for S in xs)
    cx = chord_elements(z, weight, X)
    cy = chord_elements(z, -weight, Y)
    pairs = tuple((a, b) for (_, a), (_, b) in zip(cx, cy) if a and b)
    return PairedAlgebras(
        X, Y, idem_map, pairs, internal_diff=internal_diff,
        name=f"diagonal(genus={z.genus}, weight={weight}, internal={internal_diff})",
    )


# ---------------------------------------------------------------------------
# materialized models


@dataclass(eq=False)
class HochschildModel:
    """A finite chain complex on cyclic tensor words."""

    pairing: PairedAlgebras
    period: int
    words: tuple[Word, ...]
    differential: F2Matrix
    grading: dict[Word, int] | None = None
    index: dict[Word, int] = field(default_factory=dict, repr=False)
    grading_report: "GradingReport | None" = None

    def __post_init__(self):
        if not self.index:
            self.index.update({w: i for i, w in enumerate(self.words)})

    @property
    def size(self) -> int:
        return len(self.words)

    def vector(self, words: Iterable[Word]) -> int:
        out = 0
        for w in words:
            out ^= 1 << self.index[w]
        return out

    def word_set(self, bits: int) -> set:
        return {self.words[i] for i in iter_bits(bits)}

    def label(self, w: Word) -> str:
        return self.pairing.label(w)

    def check_d_squared(self) -> None:
        cols = self.differential.columns()
        for j, c in enumerate(cols):
            acc = 0
            for i in iter_bits(c):
                acc ^= cols[i]
            if acc:
                raise ModelError(f"d^2 != 0 on word {self.label(self.words[j])}")

    def check_homogeneous(self) -> None:
        if self.grading is None:
            return
        cols = self.differential.columns()
        for j, c in enumerate(cols):
            src = self.grading.get(self.words[j])
            for i in iter_bits(c):
                if src is None or self.grading.get(self.words[i]) != src - 1:
                    raise ModelError(
                        f"differential term {self.label(self.words[j])} -> {self.label(self.words[i])} "
                        "does not drop the grading by 1"
                    )

    def to_graded_complex(self) -> GradedComplex:
        if self.grading is None:
            raise ModelError("model has no grading")
        return graded_complex_from(self.words, self.differential, self.grading, self.label)


def materialize(pairing: PairedAlgebras, period: int, check: bool = True) -> HochschildModel:
    words = tuple(pairing.words(period))
    index = {w: i for i, w in enumerate(words)}
    cols = []
    for w in words:
        v = 0
        for t in pairing.boundary_terms(w):
            v ^= 1 << index[t]
        cols.append(v)
    grading = None
    if pairing.second_grading is not None:
        grading = {w: pairing.factor_grading(w) for w in words}
    model = HochschildModel(pairing, period, words, F2Matrix.from_columns(len(words), cols), grading, index)
    if check:
        model.check_d_squared()
        model.check_homogeneous()
    return model


def graded_complex_from(words, differential: F2Matrix, grading: dict, label=str) -> GradedComplex:
    """The graded words as a GradedComplex.  Ungraded words must form whole
    components of the differential graph (a direct summand) and are dropped."""
    by_deg: dict[int, list[int]] = defaultdict(list)
    for i, w in enumerate(words):
        if w in grading:
            by_deg[grading[w]].append(i)
    pos = {}
    for deg, idxs in by_deg.items():
        for p, i in enumerate(idxs):
            pos[i] = p
    cols = differential.columns()
    basis = {deg: [label(words[i]) for i in idxs] for deg, idxs in by_deg.items()}
    d = {}
    for deg, idxs in by_deg.items():
        if deg - 1 not in by_deg:
            if any(cols[i] for i in idxs):
                raise ModelError("differential leaves the graded range")
            continue
        d[deg] = [[pos[r] for r in iter_bits(cols[i])] for i in idxs]
    return GradedComplex.from_sparse(basis, d)


def cyclic_quotient_basis(pairing: PairedAlgebras, period: int) -> list[Word]:
    return pairing.words(period)


def model_extreme_cobar(k: int) -> HochschildModel:
    return materialize(extreme_pairing(k), 2)


def model_extreme_cobar_square(k: int) -> HochschildModel:
    return materialize(extreme_pairing(k), 4)


def model_diagonal(z: PointedMatchedCircle, weight: int, internal_diff: bool = True) -> HochschildModel:
    model = materialize(diagonal_pairing(z, weight, internal_diff), 2)
    model.grading, model.grading_report = relative_grading(model, allow_acyclic_inconsistent=True)
    return model


def model_diagonal_square(z: PointedMatchedCircle, weight: int, internal_diff: bool = True) -> PairedAlgebras:
    """The period-4 diagonal model, kept lazy: genus 2 has millions of words."""
    return diagonal_pairing(z, weight, internal_diff)


# ---------------------------------------------------------------------------
# grading and homology


@dataclass
class GradingReport:
    """How the words of a model were graded.

    ``free`` components are consistently graded but contain no anchor, so
    their degrees are only relative.  ``ungradable`` components contain a
    cycle with nonzero total drop; they are accepted only when acyclic.
    Each entry is (word labels, homology dimension of the component).
    """

    anchored: int
    free: list[tuple[list[str], int]]
    ungradable: list[tuple[list[str], int]]

    @property
    def complete(self) -> bool:
        """Every homology-carrying component is anchored."""
        return not any(h for _, h in self.free)


def _components(model: HochschildModel):
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for j, c in enumerate(model.differential.columns()):
        for i in iter_bits(c):
            adj[j].append((i, -1))
            adj[i].append((j, 1))
    return adj


def _component_homology(model: HochschildModel, comp: list[int]) -> int:
    from .f2 import rank

    pos = {u: t for t, u in enumerate(comp)}
    cols = model.differential.columns()
    sub = []
    for u in comp:
        v = 0
        for i in iter_bits(cols[u]):
            v |= 1 << pos[i]
        sub.append(v)
    return len(comp) - 2 * rank(F2Matrix.from_columns(len(comp), sub))


def relative_grading(model: HochschildModel, anchors: Iterable[Word] | None = None,
                     allow_acyclic_inconsistent: bool = False):
    """Integer grading with every differential edge dropping the degree by 1.

    Components of the differential graph containing an anchor word (by
    default the all-idempotent words) are pinned at degree 0 there.  Other
    consistent components are graded relative to their least word and
    reported as free.  A component containing a cycle with nonzero total
    drop raises ModelError, unless ``allow_acyclic_inconsistent`` is set and
    the component has zero homology, in which case it is left ungraded.
    Returns (grading, report); the grading omits ungraded words.
    """
    words = model.words
    if anchors is None:
        X, Y = model.pairing.first, model.pairing.second
        xi, yi = set(X.idempotents), set(Y.idempotents)
        anchors = [w for w in words if all(f in (xi if i % 2 == 0 else yi) for i, f in enumerate(w))]
    anchor_idx = [model.index[w] for w in anchors]
    adj = _components(model)
    grading: dict[Word, int] = {}
    done: set[int] = set()
    free, ungradable = [], []
    n_anchored = 0

    def flood(start: int):
        deg = {start: 0}
        queue = deque([start])
        comp = [start]
        clash = None
        while queue:
            u = queue.popleft()
            for v, step in adj[u]:
                want = deg[u] + step
                if v in deg:
                    if deg[v] != want and clash is None:
                        clash = (u, v)
                else:
                    deg[v] = want
                    comp.append(v)
                    queue.append(v)
        return deg, comp, clash

    for start in anchor_idx + list(range(len(words))):
        if start in done:
            continue
        deg, comp, clash = flood(start)
        done.update(comp)
        is_anchor = start in anchor_idx
        if clash is not None:
            u, v = clash
            h = _component_homology(model, comp)
            if not allow_acyclic_inconsistent or h:
                raise ModelError(
                    f"inconsistent grading cycle through {model.label(words[u])} and {model.label(words[v])}"
                )
            ungradable.append(([model.label(words[t]) for t in sorted(comp)], h))
            continue
        for a in anchor_idx:
            if a in deg and deg[a] != 0:
                raise ModelError(f"anchor word {model.label(words[a])} forced to degree {deg[a]}")
        shift = 0 if is_anchor else -max(deg.values())
        for t, g in deg.items():
            grading[words[t]] = g + shift
        if is_anchor:
            n_anchored += len(comp)
        else:
            free.append(([model.label(words[t]) for t in sorted(comp)], _component_homology(model, comp)))
    return grading, GradingReport(n_anchored, free, ungradable)


@dataclass
class HochschildHomology:
    total: int
    by_degree: dict[int, int] | None
    resolved: bool = False
    representatives: dict[int, list[set]] | None = None

    def degree_list(self) -> list[tuple[int, int]]:
        if self.by_degree is None:
            return []
        return sorted(((d, n) for d, n in self.by_degree.items() if n), reverse=True)


def hochschild_homology(model: HochschildModel, with_representatives: bool = False) -> HochschildHomology:
    """Homology of the model, per degree on the graded words.

    Ungraded words form acyclic components (see :func:`relative_grading`),
    so they do not contribute.  ``resolved`` is False when some
    homology-carrying component is graded only relatively.
    """
    from .f2 import rank

    if model.grading is None:
        r = rank(model.differential)
        return HochschildHomology(model.size - 2 * r, None)
    graded = [w for w in model.words if w in model.grading]
    idx = {w: i for i, w in enumerate(graded)}
    cols = model.differential.columns()
    sub_cols = []
    for w in graded:
        v = 0
        for i in iter_bits(cols[model.index[w]]):
            v |= 1 << idx[model.words[i]]
        sub_cols.append(v)
    sub = F2Matrix.from_columns(len(graded), sub_cols)
    gc = graded_complex_from(graded, sub, model.grading, model.label)
    h = gc.homology(with_representatives)
    reps = None
    if with_representatives:
        reps = {}
        by_deg = defaultdict(list)
        for w in graded:
            by_deg[model.grading[w]].append(w)
        for deg, vecs in h.representatives.items():
            reps[deg] = [{by_deg[deg][j] for j in iter_bits(v)} for v in vecs]
    dims = {d: n for d, n in h.dims.items() if n}
    report = getattr(model, "grading_report", None)
    resolved = report.complete if report is not None else True
    return HochschildHomology(sum(dims.values()), dims, resolved, reps)
