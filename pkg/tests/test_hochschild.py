import itertools

import pytest

from hhtate.algebra import build_algebra
from hhtate.f2 import iter_bits
from hhtate.hochschild import (
    ModelError,
    PairedAlgebras,
    cyclic_quotient_basis,
    diagonal_pairing,
    extreme_pairing,
    hochschild_homology,
    materialize,
    model_diagonal,
    model_extreme_cobar,
    model_extreme_cobar_square,
    relative_grading,
)
from hhtate.strands import antipodal_pmc


def one_dim():
    return build_algebra(["e"], [0], [0], [0], {(0, 0): 1})


def formula_boundary(pa: PairedAlgebras, w):
    """The junction formula written out directly on basis products:
    x|y -> x xi | xi' y at X|Y cuts and y xi' | xi x at Y|X cuts."""
    X, Y = pa.first, pa.second
    out = set()
    n = len(w)
    for i in range(n):
        j = (i + 1) % n
        for xi, yi in pa.pairs:
            if i % 2 == 0:
                left, right = X.mul(1 << w[i], xi), Y.mul(yi, 1 << w[j])
            else:
                left, right = Y.mul(1 << w[i], yi), X.mul(xi, 1 << w[j])
            for a in iter_bits(left):
                for b in iter_bits(right):
                    t = list(w)
                    t[i], t[j] = a, b
                    t = tuple(t)
                    if pa.is_consistent(t):
                        out ^= {t}
    return out


def brute_words(pa: PairedAlgebras, period: int):
    X, Y = pa.first, pa.second
    facs = [range(X.dim), range(Y.dim)] * (period // 2)
    return {w for w in itertools.product(*facs) if pa.is_consistent(w)}


def test_one_dimensional_pair():
    e = one_dim()
    pa = PairedAlgebras(e, e, (0,), ())
    assert cyclic_quotient_basis(pa, 2) == [(0, 0)]
    m = materialize(pa, 2)
    assert m.differential.is_zero()
    assert hochschild_homology(m).total == 1


@pytest.mark.parametrize("k", [1, 2])
def test_word_enumeration_oracle(k):
    pa = extreme_pairing(k)
    for period in (2, 4):
        if period == 4 and k == 2:
            continue  # 76^2 * 76^2 tuples is too many to list
        assert set(pa.words(period)) == brute_words(pa, period)
        assert pa.count_words(period) == len(pa.words(period))


def test_extreme_counts():
    for k, (half, square) in {1: (18, 322), 2: (76, 5444), 3: (174, 27846), 4: (312, 88328)}.items():
        pa = extreme_pairing(k)
        assert pa.count_words(2) == half
        assert pa.count_words(4) == square


def test_square_words_are_cyclic_not_all_pairs():
    """Square words are closed 4-cycles; the halves of a square word need not
    be half-model words, so the count is a trace, not a square."""
    pa = extreme_pairing(1)
    half = set(pa.words(2))
    sq = pa.words(4)
    assert len(sq) != len(half) ** 2
    assert all((w[0], w[1]) in half for w in sq if (w[2], w[3]) == (w[0], w[1]))


@pytest.mark.parametrize("k", [1, 2])
def test_extreme_differential_matches_formula(k):
    pa = extreme_pairing(k)
    for period in (2, 4):
        for w in pa.words(period):
            assert pa.boundary([w]) == formula_boundary(pa, w), pa.label(w)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_unit_is_a_cycle(k):
    # each term xi|xi' arises once from each side of an idempotent and cancels
    pa = extreme_pairing(k)
    unit = pa.unit_word_sum(2)
    assert len(unit) == 2 * k
    assert pa.boundary(unit) == set()
    per_word = [formula_boundary(pa, w) for w in unit]
    assert any(per_word)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_extreme_models(k):
    m = model_extreme_cobar(k)
    m.check_d_squared()
    m.check_homogeneous()
    graded, report = relative_grading(m)
    assert not report.ungradable
    # the relative grading agrees with minus the path length up to a shift
    # on each component, and exactly on the component of the unit
    shift = {w: m.grading[w] - g for w, g in graded.items()}
    for j, col in enumerate(m.differential.columns()):
        for i in iter_bits(col):
            assert shift[m.words[i]] == shift[m.words[j]]
    assert all(shift[w] == 0 for w in m.pairing.unit_word_sum(2))
    h = hochschild_homology(m)
    assert h.by_degree == {0: 1, -1: 2 * k, -(4 * k - 1): 1}


@pytest.mark.parametrize("k", [1, 2])
def test_extreme_square_models(k):
    m = model_extreme_cobar_square(k)
    m.check_d_squared()
    m.check_homogeneous()
    tau = {w: (w[2], w[3], w[0], w[1]) for w in m.words}
    for w in m.words:
        assert {tau[t] for t in m.pairing.boundary([w])} == m.pairing.boundary([tau[w]])


def test_unit_boundary_of_extreme_square_is_symmetric():
    pa = extreme_pairing(1)
    d = pa.boundary(pa.unit_word_sum(4))
    assert len(d) == 12
    assert {(w[2], w[3], w[0], w[1]) for w in d} == d


def test_relative_grading_of_genus2_components():
    m = model_diagonal(antipodal_pmc(2), 0)
    report = m.grading_report
    assert report.anchored == 230
    assert report.complete
    # every component away from the unit is acyclic
    assert report.free and all(h == 0 for _, h in report.free)
    assert all(h == 0 for _, h in report.ungradable)
    for w in m.pairing.unit_word_sum(2):
        assert m.grading[w] == 0


def test_relative_grading_rejects_inconsistent_cycle():
    e = one_dim()
    pa = PairedAlgebras(e, e, (0,), ())
    m = materialize(pa, 2)
    from hhtate.f2 import F2Matrix

    m.differential = F2Matrix.identity(1)  # a loop: drop 1 around a cycle of length 1
    with pytest.raises(ModelError):
        relative_grading(m)


def test_genus1_diagonal():
    m = model_diagonal(antipodal_pmc(1), 0)
    h = hochschild_homology(m)
    assert h.total == 4
    assert h.by_degree == {0: 1, -1: 3}


def test_bottom_weight_is_trivial():
    for k in (1, 2):
        m = model_diagonal(antipodal_pmc(k), -k)
        assert m.pairing.first.dim == 1
        assert hochschild_homology(m).by_degree == {0: 1}


def test_internal_differential_is_needed_at_genus2():
    pa = diagonal_pairing(antipodal_pmc(2), 0, internal_diff=False)
    with pytest.raises(ModelError, match="d\\^2"):
        materialize(pa, 2)


def test_genus2_diagonal_homology():
    m = model_diagonal(antipodal_pmc(2), 0)
    assert m.size == 2558
    h = hochschild_homology(m)
    assert h.total == 16
    assert h.by_degree == {0: 1, -1: 4, -2: 10, -3: 1}
    assert h.resolved


def test_genus2_square_unit_boundary():
    pa = diagonal_pairing(antipodal_pmc(2), 0)
    assert pa.count_words(4) == 6_672_086
    assert len(pa.boundary(pa.unit_word_sum(4))) == 192


def test_json_export():
    from hhtate.complexes import GradedComplex

    m = model_extreme_cobar(1)
    gc = m.to_graded_complex()
    back = GradedComplex.from_json(gc.to_json())
    assert back.homology().dims == gc.homology().dims


def test_idempotent_expansion_k1():
    pa = extreme_pairing(1)
    A, B = pa.first, pa.second
    want = sorted(["a1|a1'", "b1|b1'", "c|c'"])
    for e in ("i1", "i2"):
        w = (A.index(e), B.index(e))
        assert sorted(pa.label(t) for t in pa.boundary([w])) == want


def test_extreme_k1_homology_frozen():
    assert hochschild_homology(model_extreme_cobar(1)).total == 4


def test_genus1_unit_boundaries():
    pa = diagonal_pairing(antipodal_pmc(1), 0)
    assert pa.boundary(pa.unit_word_sum(2)) == set()
    assert len(pa.boundary(pa.unit_word_sum(4))) == 16
