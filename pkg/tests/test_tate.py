import pytest
from hypothesis import given
from hypothesis import strategies as st

from hhtate.complexes import periodic_total_homology
from hhtate.golden import lift_pairs
from hhtate.hochschild import extreme_pairing
from hhtate.tate import (
    InternalInvariantError,
    LiftConfig,
    TateStructure,
    d2_matches_hochschild,
    e1_dimension_by_row,
    e1_equals_e2,
    first_lift_formula,
    first_lift_matches,
    is_square,
    rank_inequality_check,
    run_lift_chain,
    square_class,
    swap,
)


@st.composite
def word_sets(draw, t):
    words = t.square.words
    picks = draw(st.lists(st.integers(0, len(words) - 1), max_size=12))
    return {words[i] for i in picks}


@pytest.fixture(scope="module")
def ext1():
    return TateStructure(extreme_pairing(1))


def test_swap_is_an_involution(ext1):
    for w in ext1.square.words:
        assert swap(swap(w)) == w
        assert swap(w) in ext1.square.index
        assert is_square(w) == (swap(w) == w)


def test_one_plus_tau_squares_to_zero(ext1):
    words = ext1.square.words
    for w in words:
        assert ext1.one_plus_tau(ext1.one_plus_tau([w])) == set()
    m = ext1.tau_matrix()
    assert (m @ m).entries == frozenset((i, i) for i in range(len(words)))


def test_square_class_examples(ext1):
    b = ext1.half.words[3]
    assert square_class([b]) == {b + b}
    assert square_class([]) == set()


def test_square_class_is_additive_mod_image(ext1):
    # (b + c)^{x2} = b^{x2} + c^{x2} + (b|c + c|b), and the cross terms form an orbit
    words = ext1.half.words
    for b in words[:6]:
        for c in words[:6]:
            if b == c:
                continue
            full = {u + v for u in (b, c) for v in (b, c) if ext1.pairing.is_consistent(u + v)}
            assert ext1.in_image(full ^ square_class([b, c]))


@given(st.data())
def test_half_lift_inverts_one_plus_tau(data):
    t = TateStructure(extreme_pairing(1))
    vec = data.draw(word_sets(t))
    image = t.one_plus_tau(vec)
    assert t.in_image(image)
    assert t.one_plus_tau(t.half_lift(image)) == image
    assert not t.obstruction(image)


@given(st.data())
def test_obstruction_detects_non_image(data):
    t = TateStructure(extreme_pairing(1))
    vec = data.draw(word_sets(t))
    assert t.in_image(vec) == (not t.obstruction(vec))


def test_boundary_commutes_with_tau(ext1):
    for w in ext1.square.words[::7]:
        assert {swap(u) for u in ext1.boundary([w])} == ext1.boundary([swap(w)])


# first and second pages ---------------------------------------------------


def test_squares_are_the_half_words(ext1):
    rep = e1_equals_e2(ext1)
    assert rep.ok
    assert rep.squares == len(ext1.half.words) == 18
    assert rep.kernel_dim - rep.image_dim == rep.squares


@pytest.mark.parametrize("k", [1, 2])
def test_e1_equals_e2_extreme(extreme_tate, k):
    assert e1_equals_e2(extreme_tate[k]).ok


def test_e1_equals_e2_genus1(genus1_tate):
    rep = e1_equals_e2(genus1_tate)
    assert rep.ok and rep.squares == 18


def test_e1_rows_are_even(ext1):
    rows = e1_dimension_by_row(ext1)
    assert rows and all(q % 2 == 0 for q in rows)
    # one class per square b|b, sitting in twice the degree of b
    want = {}
    for b in ext1.half.words:
        d = 2 * ext1.half.grading[b]
        want[d] = want.get(d, 0) + 1
    assert rows == want


def test_d2_exhaustive_small(ext1, genus1_tate, extreme_tate):
    for t in (ext1, genus1_tate, extreme_tate[2]):
        rep = d2_matches_hochschild(t)
        assert rep.ok, rep.failures[:3]
        assert rep.checked == len(t.half.words)


def test_d2_sample_genus2(genus2_tate):
    words = genus2_tate.half.words[::25][:100]
    rep = d2_matches_hochschild(genus2_tate, words)
    assert rep.ok and rep.checked == len(words)


def test_periodic_total_matches_spectral_sequence(genus1_tate):
    assert periodic_total_homology(genus1_tate.tate_bicomplex()) == 4


# the lift chain -------------------------------------------------------------


def test_zero_start_terminates_at_once(ext1):
    rep = run_lift_chain(ext1, start=set())
    assert rep.status == "terminated-zero" and rep.trace == [0] and rep.verdict == "pi-formal"


def test_start_must_be_tau_invariant(ext1):
    w = next(w for w in ext1.square.words if not is_square(w))
    with pytest.raises(ValueError):
        run_lift_chain(ext1, start={w})


EXTREME_TRACES = {
    1: [12, 6, 8, 4, 2, 1, 0],
    2: [28, 14, 24, 12, 2, 1, 0],
    3: [44, 22, 40, 20, 2, 1, 0],
    4: [60, 30, 56, 28, 2, 1, 0],
}


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_extreme_chain(k):
    t = TateStructure(extreme_pairing(k))
    rep = run_lift_chain(t, config=LiftConfig(stop_at=0))
    assert rep.trace == EXTREME_TRACES[k]
    assert rep.status == "terminated-zero" and rep.verdict == "pi-formal"
    assert first_lift_matches(t)


def test_first_lift_formula_is_nonzero():
    for k in (1, 2, 3):
        assert first_lift_formula(extreme_pairing(k))


def test_halving(genus2_chain):
    for b, e in lift_pairs(genus2_chain.trace):
        assert b == 2 * e


def test_halving_extreme():
    for k in (1, 2, 3):
        for b, e in lift_pairs(EXTREME_TRACES[k]):
            assert b == 2 * e


def test_steps_agree_with_trace(genus2_chain):
    # steps hold the final e_j; a corrected e_l gains its correction squares
    pairs = lift_pairs(genus2_chain.trace)
    steps = genus2_chain.steps
    assert [s.index for s in steps] == list(range(1, len(steps) + 1))
    assert (steps[-1].boundary_support, steps[-1].support) == pairs[-1]
    for s in steps:
        assert (s.boundary_support, s.support - s.correction_support) in pairs
    assert sum(s.correction_support for s in steps) == 16


def test_chain_is_deterministic():
    a = run_lift_chain(TateStructure(extreme_pairing(2)))
    b = run_lift_chain(TateStructure(extreme_pairing(2)))
    assert a.to_json() == b.to_json()


def test_parity_guard(monkeypatch):
    t = TateStructure(extreme_pairing(1))
    monkeypatch.setattr(TateStructure, "in_image", lambda self, vec: False)
    with pytest.raises(InternalInvariantError):
        run_lift_chain(t)


def test_budget(ext1):
    rep = run_lift_chain(ext1, config=LiftConfig(budget=1, stop_at=0))
    assert rep.status == "budget-exhausted" and rep.verdict == "undecided"
    assert rep.trace == [12, 6]


def test_config_validation():
    with pytest.raises(ValueError):
        LiftConfig(correction="nope")
    with pytest.raises(ValueError):
        LiftConfig(budget=-1)


@pytest.mark.parametrize("k", [1, 2])
def test_rank_inequality(extreme_tate, k):
    r = rank_inequality_check(extreme_tate[k])
    assert r.holds
    assert r.half_total == 2 * k + 2


def test_rank_inequality_genus1(genus1_tate):
    r = rank_inequality_check(genus1_tate)
    assert (r.square_total, r.half_total) == (6, 4)


@pytest.mark.parametrize("weight,trace", [(-1, [0]), (0, [16, 8, 16, 8]), (1, [0])])
def test_genus1_all_weights(weight, trace):
    from hhtate.hochschild import diagonal_pairing
    from hhtate.strands import antipodal_pmc

    rep = run_lift_chain(TateStructure(diagonal_pairing(antipodal_pmc(1), weight)))
    assert rep.verdict == "pi-formal" and rep.trace == trace


def test_genus2_chain(genus2_chain):
    assert genus2_chain.verdict == "pi-formal"
    assert genus2_chain.status == "terminated-grading"
    assert genus2_chain.trace[:6] == [192, 96, 1176, 588, 2106, 1053]
    assert len(genus2_chain.steps) == 6  # e_0 .. e_6, twice the depth of HH
