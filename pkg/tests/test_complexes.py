import pytest
from hypothesis import given
from hypothesis import strategies as st

from hhtate.complexes import (
    Bicomplex,
    BoundednessError,
    ComplexError,
    GradedComplex,
    PeriodicBicomplex,
    homology,
    infinity_page,
    periodic_total_homology,
    sequence_page_dims,
    spectral_page,
    total_complex,
    total_homology_dims,
)
from hhtate.f2 import F2Matrix, kernel_basis


def test_single_generator():
    c = GradedComplex.from_sparse({3: ["x"]}, {})
    assert homology(c).dims == {3: 1}


def test_identity_differential_is_acyclic():
    c = GradedComplex.from_sparse({0: ["a"], 1: ["b"]}, {1: [[0]]})
    assert homology(c).total == 0


def test_circle():
    c = GradedComplex.from_sparse({0: ["v0", "v1"], 1: ["e0", "e1"]}, {1: [[0, 1], [0, 1]]})
    h = homology(c, with_representatives=True)
    assert h.dims == {0: 1, 1: 1}
    assert h.representatives[1] == [0b11]


def test_rejects_d_squared():
    with pytest.raises(ComplexError):
        GradedComplex.from_sparse({0: ["a"], 1: ["b"], 2: ["c"]}, {1: [[0]], 2: [[0]]})


def test_rejects_bad_shape():
    with pytest.raises(ComplexError):
        GradedComplex.from_sparse({0: ["a"], 1: ["b", "c"]}, {1: [[0]]})


def test_json_round_trip():
    c = GradedComplex.from_sparse({0: ["v0", "v1"], 1: ["e0", "e1"]}, {1: [[0, 1], [0, 1]]})
    back = GradedComplex.from_json(c.to_json())
    assert back.to_json() == c.to_json()
    assert homology(back).dims == homology(c).dims


def test_one_cell_total_complex():
    b = Bicomplex({(2, 5): ("x",)})
    tot = total_complex(b)
    assert tot.dim(7) == 1 and homology(tot).total == 1


def test_unbounded_antidiagonal_refused():
    b = Bicomplex({(0, 0): ("x",)}, column_bound=False)
    with pytest.raises(BoundednessError):
        total_complex(b)


def test_bicomplex_validation():
    one = F2Matrix.identity(1)
    with pytest.raises(ComplexError):
        Bicomplex({(0, 0): ("a",), (1, 0): ("b",), (2, 0): ("c",)}, d_h={(1, 0): one, (2, 0): one})
    square = {(0, 0): ("a",), (1, 0): ("b",), (0, 1): ("c",), (1, 1): ("d",)}
    with pytest.raises(ComplexError):
        Bicomplex(square, d_h={(1, 1): one, (1, 0): one}, d_v={(1, 1): one})


def free_swap_strip() -> PeriodicBicomplex:
    col = GradedComplex.from_sparse({0: ["g", "tg"]}, {})
    return PeriodicBicomplex(col, {0: F2Matrix.from_dense([[1, 1], [1, 1]])})


def test_periodic_strip_of_free_module_is_acyclic():
    assert periodic_total_homology(free_swap_strip()) == 0
    assert all(g.dim == 0 for g in spectral_page(free_swap_strip(), "hv", 1).groups.values())


def test_degenerate_direction():
    # d_h = 0: vhE^1 = column homology, hvE^1 = the cells themselves
    b = Bicomplex({(0, 0): ("a",), (0, 1): ("b",)}, d_v={(0, 1): F2Matrix.identity(1)})
    assert spectral_page(b, "vh", 1).dims() == {}
    assert spectral_page(b, "hv", 1).dims() == {(0, 0): 1, (0, 1): 1}


# random bicomplexes as tensor products of small complexes -----------------


@st.composite
def small_complexes(draw):
    n0, n1, n2 = (draw(st.integers(0, 3)) for _ in range(3))
    d1 = F2Matrix(n0, n1, tuple(draw(st.integers(0, (1 << n1) - 1)) for _ in range(n0)))
    ker = [v.bits for v in kernel_basis(d1)]
    cols2 = []
    for _ in range(n2):
        pick = draw(st.integers(0, (1 << len(ker)) - 1))
        c = 0
        for i, k in enumerate(ker):
            if pick >> i & 1:
                c ^= k
        cols2.append(c)
    d2 = F2Matrix.from_columns(n1, cols2)
    return {0: n0, 1: n1, 2: n2}, {1: d1, 2: d2}


def kron(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    entries = [
        (i * b.rows + k, j * b.cols + l)
        for (i, j) in a.entries
        for (k, l) in b.entries
    ]
    return F2Matrix.from_entries(a.rows * b.rows, a.cols * b.cols, entries)


def tensor_bicomplex(a, b) -> Bicomplex:
    (da, ma), (db, mb) = a, b
    cells = {(p, q): tuple(f"{p}.{i}|{q}.{j}" for i in range(da[p]) for j in range(db[q]))
             for p in da for q in db if da[p] * db[q]}

    def mat(dims, mats, n):
        m = mats.get(n)
        return m if m is not None else F2Matrix.zeros(dims.get(n - 1, 0), dims.get(n, 0))

    d_h = {(p, q): kron(mat(da, ma, p), F2Matrix.identity(db[q])) for (p, q) in cells if (p - 1, q) in cells}
    d_v = {(p, q): kron(F2Matrix.identity(da[p]), mat(db, mb, q)) for (p, q) in cells if (p, q - 1) in cells}
    return Bicomplex(cells, d_h, d_v)


def target(orientation, key, r):
    p, q = key
    return (p - r, q + r - 1) if orientation == "vh" else (p + r - 1, q - r)


@given(small_complexes(), small_complexes())
def test_infinity_page_matches_total_homology(a, b):
    bc = tensor_bicomplex(a, b)
    tot = total_homology_dims(bc)
    for o in ("vh", "hv"):
        inf = infinity_page(bc, o)
        assert {n: inf.antidiagonal_total(n) for n in tot} == tot


@given(small_complexes(), small_complexes(), st.sampled_from(["vh", "hv"]), st.integers(0, 3))
def test_next_page_is_homology(a, b, orientation, r):
    bc = tensor_bicomplex(a, b)
    page = spectral_page(bc, orientation, r)
    nxt = spectral_page(bc, orientation, r + 1, with_differential=False)
    from hhtate.f2 import rank

    incoming = {}
    for key, m in page.differentials.items():
        incoming[target(orientation, key, r)] = m
    for key, g in page.groups.items():
        out_rank = rank(page.differentials[key]) if key in page.differentials else 0
        in_rank = rank(incoming[key]) if key in incoming else 0
        assert nxt.groups[key].dim == g.dim - out_rank - in_rank
        if key in page.differentials and target(orientation, key, r) in page.differentials:
            after = page.differentials[target(orientation, key, r)]
            assert (after @ page.differentials[key]).is_zero()


@given(small_complexes(), small_complexes(), st.sampled_from(["vh", "hv"]), st.integers(1, 4))
def test_sequence_oracle(a, b, orientation, r):
    bc = tensor_bicomplex(a, b)
    page = spectral_page(bc, orientation, r, with_differential=False)
    cells = list(page.groups)
    oracle = sequence_page_dims(bc, orientation, r, cells)
    assert {k: page.groups[k].dim for k in cells} == oracle
