"""The swap involution on period-4 models and the lifting algorithm.

tau swaps the halves of x1|y1|x2|y2.  Since tau is a permutation of
words, everything about 1 + tau is combinatorial:

* ker(1+tau) is spanned by the square words x|y|x|y and the orbit sums
  b + tau(b); im(1+tau) by the orbit sums alone;
* v lies in im(1+tau) iff it has no square words and is tau-symmetric;
* a preimage of such v is obtained by keeping one word per orbit (the
  *half-lift*).

The lift chain starts from e_0 = (1|1|1|1) and repeatedly lifts
d(e_{j-1}) = (1+tau) e_j.  When d(e_m) fails to lie in im(1+tau), square
words are added to earlier terms (which leaves every (1+tau) e_j
unchanged) so that the failure disappears; if no such correction exists
the failure is a genuine obstruction to d^{m+1}.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .complexes import PeriodicBicomplex, spectral_page
from .f2 import Echelon, F2Matrix, F2Vector, iter_bits, kernel_basis, solve
from .hochschild import (
    HochschildModel,
    PairedAlgebras,
    Word,
    hochschild_homology,
    materialize,
    relative_grading,
    xor_into,
)


class InternalInvariantError(RuntimeError):
    """Something that the theory forbids happened (exit code 3 in the CLI)."""


def swap(w: Word) -> Word:
    return (w[2], w[3], w[0], w[1])


def is_square(w: Word) -> bool:
    return w[0] == w[2] and w[1] == w[3]


@dataclass(eq=False)
class TateStructure:
    """A period-4 model with its swap, and the matching period-2 model.

    ``representative`` orders words; the half-lift keeps the smaller word of
    each orbit.  The default is lexicographic order on factor labels.
    """

    pairing: PairedAlgebras
    representative: Callable[[Word], tuple] | None = None

    def __post_init__(self):
        if self.representative is None:
            self.representative = self.pairing.sort_key

    # models ---------------------------------------------------------------

    @cached_property
    def half(self) -> HochschildModel:
        """The period-2 model, graded (relative grading when no factor grading)."""
        model = materialize(self.pairing, 2)
        if model.grading is None:
            model.grading, model.grading_report = relative_grading(model, allow_acyclic_inconsistent=True)
        return model

    @cached_property
    def square(self) -> HochschildModel:
        """The period-4 model as an explicit matrix; only for small cases."""
        model = materialize(self.pairing, 4)
        if model.grading is None:
            model.grading, model.grading_report = relative_grading(model, allow_acyclic_inconsistent=True)
        return model

    def boundary(self, vec: Iterable[Word]) -> set:
        return self.pairing.boundary(vec)

    def unit(self) -> set:
        return self.pairing.unit_word_sum(4)

    def squares(self, half_degree: int | None = None) -> list[Word]:
        """Square words x|y|x|y in canonical order, optionally only those over
        half-words of the given degree."""
        out = []
        for w in self.half.words:
            if half_degree is None or self.half.grading.get(w) == half_degree:
                out.append(w + w)
        return out

    # 1 + tau ----------------------------------------------------------------

    def one_plus_tau(self, vec: Iterable[Word]) -> set:
        acc: set = set()
        for w in vec:
            xor_into(acc, (w, swap(w)))
        return acc

    def in_image(self, vec: set) -> bool:
        return all(not is_square(w) and swap(w) in vec for w in vec)

    def half_lift(self, vec: set) -> set:
        """One word per orbit; a preimage under 1 + tau when ``vec`` is in the image."""
        key = self.representative
        return {w for w in vec if not is_square(w) and key(w) < key(swap(w))}

    def obstruction(self, vec: set) -> set:
        """Coordinates witnessing vec not in im(1+tau): its square words and
        the representatives of orbits it meets only once."""
        key = self.representative
        out = set()
        for w in vec:
            if is_square(w):
                out.add(("square", w))
            elif swap(w) not in vec:
                t = swap(w)
                out.add(("orbit", w if key(w) < key(t) else t))
        return out

    def tau_matrix(self) -> F2Matrix:
        m = self.square
        return F2Matrix.from_entries(m.size, m.size, ((m.index[swap(w)], j) for j, w in enumerate(m.words)))

    def tate_bicomplex(self) -> PeriodicBicomplex:
        """Columns = the graded period-4 model, horizontal maps = 1 + tau."""
        m = self.square
        gc = m.to_graded_complex()
        by_deg = defaultdict(list)
        for w in m.words:
            if w in m.grading:
                by_deg[m.grading[w]].append(w)
        horizontal = {}
        for deg, ws in by_deg.items():
            pos = {w: i for i, w in enumerate(ws)}
            n = len(ws)
            horizontal[deg] = F2Matrix.from_entries(
                n, n, [(pos[w], j) for j, w in enumerate(ws)] + [(pos[swap(w)], j) for j, w in enumerate(ws)]
            )
        return PeriodicBicomplex(gc, horizontal)


def square_class(half_vec: Iterable[Word]) -> set:
    """xi = sum b  ->  sum (b|b); the Frobenius representative."""
    return {w + w for w in half_vec}


# ---------------------------------------------------------------------------
# first and second pages


@dataclass
class E1Report:
    squares: int
    kernel_dim: int
    image_dim: int
    spanned_by_squares: bool
    odd_square_degrees: list[int]

    @property
    def ok(self) -> bool:
        return self.spanned_by_squares and not self.odd_square_degrees and self.kernel_dim - self.image_dim == self.squares


def e1_equals_e2(t: TateStructure) -> E1Report:
    """hvE^1 = ker(1+tau)/im(1+tau) on the explicit model: its dimension is
    the number of square words, it is spanned by them, and (with a grading)
    squares sit only in even degrees, so odd rows of hvE^1 vanish and
    d^1 = 0."""
    m = t.square
    one_tau = t.tau_matrix() + F2Matrix.identity(m.size)
    ker = kernel_basis(one_tau)
    image = Echelon()
    img_rank = 0
    for c in one_tau.columns():
        if image.add(c):
            img_rank += 1
    sq = [w for w in m.words if is_square(w)]
    for w in sq:
        image.add(1 << m.index[w])
    spanned = all(image.contains(v.bits) for v in ker)
    odd = sorted({m.grading[w] for w in sq if w in m.grading and m.grading[w] % 2})
    return E1Report(len(sq), len(ker), img_rank, spanned, odd)


def e1_dimension_by_row(t: TateStructure) -> dict[int, int]:
    page = spectral_page(t.tate_bicomplex(), "hv", 1, with_differential=False)
    return {q: g.dim for (p, q), g in page.groups.items() if g.dim}


@dataclass
class D2Report:
    checked: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def d2_matches_hochschild(t: TateStructure, words: Sequence[Word] | None = None) -> D2Report:
    """For each half word xi: d(xi|xi) = (1+tau) y, and d(y) must equal
    (d xi)^{square} modulo im(1+tau)."""
    if words is None:
        words = t.half.words
    failures = []
    for xi in words:
        s = square_class([xi])
        ds = t.boundary(s)
        if not t.in_image(ds):
            failures.append(f"{t.pairing.label(xi)}: d of its square is not in im(1+tau)")
            continue
        y = t.half_lift(ds)
        diff = xor_into(t.boundary(y), square_class(t.pairing.boundary([xi])))
        if not t.in_image(diff):
            failures.append(f"{t.pairing.label(xi)}: second differential disagrees with the Hochschild differential")
    return D2Report(len(words), failures)


# ---------------------------------------------------------------------------
# the lift chain


@dataclass
class Step:
    index: int
    boundary_support: int
    support: int
    correction_support: int = 0


@dataclass
class PiFormalityReport:
    model: str
    steps: list[Step]
    status: str
    verdict: str
    trace: list
    obstruction: dict | None = None
    flags: dict = field(default_factory=dict)
    golden_match: str | None = None

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "steps": [
                {
                    "index": s.index,
                    "boundary_support": s.boundary_support,
                    "support": s.support,
                    "correction_support": s.correction_support,
                }
                for s in self.steps
            ],
            "trace": self.trace,
            "status": self.status,
            "verdict": self.verdict,
            "obstruction": self.obstruction,
            "flags": self.flags,
            "golden_match": self.golden_match,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


@dataclass
class LiftConfig:
    budget: int | None = None
    correction: str = "min-boundary"
    max_enumeration: int = 14
    stop_at: int | None = None

    def __post_init__(self):
        if self.correction not in ("min-boundary", "pivot"):
            raise ValueError(f"unknown correction rule {self.correction!r}")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")


def default_budget(t: TateStructure) -> int:
    degs = [g for g in t.half.grading.values()]
    if degs:
        return 2 * (max(degs) - min(degs)) + 1
    return t.pairing.count_words(4)


def _hh_depth(t: TateStructure) -> int | None:
    """Largest i with HH_{-i} of the half model nonzero, when fully anchored."""
    h = hochschild_homology(t.half)
    if h.by_degree is None or not h.resolved:
        return None
    return max((-d for d, n in h.by_degree.items() if n), default=0)


def run_lift_chain(t: TateStructure, start: set | None = None, config: LiftConfig | None = None) -> PiFormalityReport:
    """Lift e_0 = ``start`` (default (1|1|1|1)) along d and (1+tau)^{-1}.

    Stops when d(e_m) = 0, once e_{2i} exists for every i with HH_{-i}
    nonzero (``stop_at`` overrides), on a genuine obstruction, or when the
    budget of lift steps runs out.  ``trace`` lists |d(e_{j-1})|, |e_j| in
    order, with a ``{"correction": n, "level": l}`` entry wherever n square
    words were added to e_l; the entries after it redo the chain from e_l.
    """
    config = config or LiftConfig()
    e = [set(start) if start is not None else t.unit()]
    if t.one_plus_tau(e[0]):
        raise ValueError("start must lie in ker(1+tau)")
    budget = config.budget if config.budget is not None else default_budget(t)
    stop_at = config.stop_at
    if stop_at is None:
        depth = _hh_depth(t)
        stop_at = 2 * depth if depth is not None else None
    trace: list = []
    bsize = [0]
    corrections: dict[int, int] = {}
    lifts = 0
    m = 0

    def finish(status, verdict, obstruction=None):
        steps = [Step(j, bsize[j], len(e[j]), corrections.get(j, 0)) for j in range(1, len(e))]
        return _report(t, steps, trace, status, verdict, config, obstruction)

    while True:
        if stop_at is not None and 0 < stop_at <= m:
            return finish("terminated-grading", "pi-formal")
        v = t.boundary(e[m])
        if not v:
            trace.append(0)
            return finish("terminated-zero", "pi-formal")
        if t.in_image(v):
            if lifts >= budget:
                return finish("budget-exhausted", "undecided")
            lifts += 1
            e.append(t.half_lift(v))
            bsize.append(len(v))
            m += 1
            trace += [len(v), len(e[m])]
            continue
        if m % 2 == 0:
            raise InternalInvariantError(
                f"d(e_{m}) is not in im(1+tau) after an even step; odd rows of hvE^1 should vanish"
            )
        fix = _find_correction(t, e, m, v, config)
        if fix is None:
            obs = t.obstruction(v)
            info = {
                "page": m + 1,
                "squares": sum(1 for kind, _ in obs if kind == "square"),
                "unpaired_orbits": sum(1 for kind, _ in obs if kind == "orbit"),
            }
            return finish("obstructed", f"obstruction-at-d^{m + 1}", info)
        level, x = fix
        e[level] = xor_into(set(e[level]), x)
        del e[level + 1:], bsize[level + 1:]
        corrections = {j: n for j, n in corrections.items() if j < level}
        corrections[level] = corrections.get(level, 0) + len(x)
        trace.append({"correction": len(x), "level": level})
        m = level


def _report(t, steps, trace, status, verdict, config, obstruction=None) -> PiFormalityReport:
    flags = {
        "internal_diff": t.pairing.internal_diff,
        "representative": "label-lexicographic" if t.representative == t.pairing.sort_key else "custom",
        "correction": config.correction,
        "second_factor": "A(Z,-i), idempotents matched by complement",
    }
    return PiFormalityReport(t.pairing.name, steps, status, verdict, trace, obstruction, flags)


def _find_correction(t: TateStructure, e: list[set], m: int, v: set, config: LiftConfig):
    """Square words x added to e_{m-1} with d(e_m + H d x) in im(1+tau).

    Returns (level, x) or None.  Only the one-step-back level is searched:
    squares added at e_l change d(e_l) by an element of im(1+tau), and the
    first place that change can repair is d(e_{l+1}).
    """
    level = m - 1
    if level < 1:
        return None
    half_degree = -(level // 2) if t.half.grading else None
    cands = t.squares(half_degree)
    if not cands:
        cands = t.squares()
    rows: dict = {}

    def encode(obs: set) -> int:
        b = 0
        for r in obs:
            if r not in rows:
                rows[r] = len(rows)
            b ^= 1 << rows[r]
        return b

    cols = [encode(t.obstruction(t.boundary(t.half_lift(t.boundary([s]))))) for s in cands]
    rhs = encode(t.obstruction(v))
    # only the blocks of candidates linked (through shared rows) to the target matter
    parent = list(range(len(cands)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[int, int] = {}
    for i, c in enumerate(cols):
        for r in iter_bits(c):
            if r in owner:
                parent[find(i)] = find(owner[r])
            else:
                owner[r] = i
    target_rows = set(iter_bits(rhs))
    roots = {find(i) for i, c in enumerate(cols) if any(r in target_rows for r in iter_bits(c))}
    sel = [i for i in range(len(cands)) if find(i) in roots]
    mat = F2Matrix.from_columns(len(rows), [cols[i] for i in sel])
    x0 = solve(mat, F2Vector(len(rows), rhs))
    if x0 is None:
        return None
    best = x0.bits
    if config.correction == "min-boundary":
        ker = [k.bits for k in kernel_basis(mat)]
        if len(ker) <= config.max_enumeration:
            best_key = None
            for mask in range(1 << len(ker)):
                b = x0.bits
                for j in iter_bits(mask):
                    b ^= ker[j]
                x = {cands[sel[i]] for i in iter_bits(b)}
                key = (len(t.boundary(xor_into(set(e[level]), x))), len(x), sorted(t.representative(w) for w in x))
                if best_key is None or key < best_key:
                    best_key, best = key, b
    return level, {cands[sel[i]] for i in iter_bits(best)}


# ---------------------------------------------------------------------------
# verdicts


def verify_algebra_pi_formality(t: TateStructure, config: LiftConfig | None = None) -> PiFormalityReport:
    return run_lift_chain(t, None, config)


@dataclass
class RankInequality:
    square_total: int
    half_total: int

    @property
    def holds(self) -> bool:
        return self.square_total >= self.half_total


def rank_inequality_check(t: TateStructure) -> RankInequality:
    from .f2 import rank

    sq = t.square
    return RankInequality(sq.size - 2 * rank(sq.differential), hochschild_homology(t.half).total)


def first_lift_formula(pairing: PairedAlgebras) -> set:
    """sum over generator pairs (xi, xi') of (xi|xi'|1|1) + (1|xi'|xi|1),
    with each 1 expanded into the idempotents that make the word nonzero."""
    X, Y = pairing.first, pairing.second
    out: set = set()
    for xi_bits, yi_bits in pairing.pairs:
        for xi in iter_bits(xi_bits):
            for yi in iter_bits(yi_bits):
                for ex in X.idempotents:
                    for ey in Y.idempotents:
                        for w in ((xi, yi, ex, ey), (ex, yi, xi, ey)):
                            if pairing.is_consistent(w):
                                xor_into(out, [w])
    return out


def first_lift_matches(t: TateStructure) -> bool:
    """e_1 agrees with the closed formula up to ker(1+tau)."""
    e1 = t.half_lift(t.boundary(t.unit()))
    return t.one_plus_tau(e1) == t.one_plus_tau(first_lift_formula(t.pairing))
