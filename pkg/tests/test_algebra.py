import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import algebra, cartan, corner_sl2
from liepoisson import linalg as la
from liepoisson.algebra import (
    Covector,
    DegenerateRestrictionError,
    InvalidDimensionError,
    LieAlgebraError,
    NotSubalgebraError,
    UnsupportedAlgebraError,
    build_classical,
    cartan_splitting,
    centralizer,
    default_form,
    from_matrices,
    from_structure_constants,
    killing_form,
    make_splitting,
    parse_algebra_name,
    principal_triple,
    root_decomposition,
    trace_form,
)

NAMES = ["gl2", "sl2", "gl3", "sl3", "gl4", "sl4"]


@pytest.mark.parametrize("name", NAMES)
def test_classical_algebras_are_valid(name):
    g = algebra(name)
    n = int(name[2:])
    assert g.dim == n * n - (name.startswith("sl"))
    assert g.antisymmetry_defects() == []
    assert g.jacobi_defects() == []
    assert g.realization_defects() == []


@pytest.mark.parametrize("name", NAMES)
def test_bracket_is_matrix_commutator(name):
    g = algebra(name)
    for i, j in itertools.combinations(range(g.dim), 2):
        a, b = g.matrix(g.basis_vector(i)), g.matrix(g.basis_vector(j))
        comm = [tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(la.matmul(a, b), la.matmul(b, a))]
        assert list(g.matrix(g.bracket(g.basis_vector(i), g.basis_vector(j)))) == comm


def test_sl2_basis_and_structure():
    g = algebra("sl2")
    assert g.basis_labels == ("E12", "E21", "H1")
    e, f, h = (g.basis_vector(k) for k in ("E12", "E21", "H1"))
    assert g.bracket(h, e) == la.scale(2, e)
    assert g.bracket(h, f) == la.scale(-2, f)
    assert g.bracket(e, f) == h
    assert g.structure_constant(0, 1, 2) == 1


def test_unknown_family_and_bad_size():
    with pytest.raises(UnsupportedAlgebraError):
        build_classical("so", 3)
    with pytest.raises(InvalidDimensionError):
        build_classical("sl", 1)
    with pytest.raises(UnsupportedAlgebraError):
        parse_algebra_name("e8")
    assert parse_algebra_name("gl3") == algebra("gl3")


def test_structure_constants_reject_broken_jacobi():
    # [b1,b2] = b3, [b1,b3] = b1 is antisymmetric but violates Jacobi
    with pytest.raises(LieAlgebraError):
        from_structure_constants(["a", "b", "c"], {(0, 1, 2): 1, (1, 0, 2): -1, (0, 2, 0): 1, (2, 0, 0): -1})


def test_forms():
    g = algebra("sl2")
    assert trace_form(g).gram == ((0, 1, 0), (1, 0, 0), (0, 0, 2))
    assert killing_form(g).gram == ((0, 4, 0), (4, 0, 0), (0, 0, 8))
    for name in NAMES:
        assert trace_form(algebra(name)).invariance_defects(algebra(name)) == []
    # without a matrix realization the Killing form is the default
    bare = from_structure_constants(list(g.basis_labels), _table_records(g))
    assert default_form(bare).gram == killing_form(g).gram


def _table_records(g):
    out = {}
    for (i, j), entry in g.table.items():
        for k, c in entry.items():
            out[i, j, k] = c
            out[j, i, k] = -c
    return out


@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_flat_sharp_roundtrip(coords):
    form = trace_form(algebra("sl3"))
    x = tuple(coords)
    assert form.sharp(form.flat(x)) == x
    assert form.flat(x)(x) == form.pair(x, x)


def test_cartan_splitting_dimensions():
    for name in NAMES:
        g = algebra(name)
        split = cartan(name)
        n = g.rank_n
        assert split.dim_f == (n if name.startswith("gl") else n - 1)
        assert split.dim_m == n * n - n
        # [E12, E23] = E13 keeps m from bracketing into t once n > 2
        assert split.is_z2_grading() == (n == 2)
        assert len(root_decomposition(split)) == n * n - n


def test_lower_right_sl2_in_gl4():
    split = corner_sl2("gl4")
    assert (split.dim_f, split.dim_m) == (3, 13)
    assert split.defects() == {}
    assert not split.is_z2_grading()


def test_splitting_errors():
    g = algebra("sl2")
    e, f = g.basis_vector("E12"), g.basis_vector("E21")
    with pytest.raises(DegenerateRestrictionError):
        make_splitting(g, trace_form(g), [e])
    with pytest.raises(NotSubalgebraError):
        make_splitting(g, trace_form(g), [e, f])


def test_custom_cartan_uses_eigenvector_fallback():
    g = algebra("sl2")
    t = la.add(g.basis_vector("E12"), g.basis_vector("E21"))
    split = cartan_splitting(g, [t])
    roots = root_decomposition(split)
    assert sorted(roots) == [(-2,), (2,)]
    for (lam,), vecs in roots.items():
        for v in vecs:
            assert g.bracket(t, v) == la.scale(lam, v)


def test_cartan_over_q_is_required():
    g = algebra("sl2")
    # e - f is elliptic: eigenvalues of ad are imaginary
    t = la.sub(g.basis_vector("E12"), g.basis_vector("E21"))
    with pytest.raises(UnsupportedAlgebraError):
        cartan_splitting(g, [t])


def test_centralizers():
    g = algebra("sl2")
    assert centralizer(g, Covector([0, 0, 0])).rank == 3
    assert centralizer(g, Covector([1, 0, 0])).rank == 1
    gl3 = algebra("gl3")
    form = trace_form(gl3)
    generic = gl3.coords_of_matrix([[1, 0, 0], [0, 2, 0], [0, 0, 5]])
    cent = centralizer(gl3, generic, form)
    assert cent.rank == 3
    assert centralizer(gl3, la.scale(7, generic), form).equals(cent)


@pytest.mark.parametrize("name", ["sl2", "sl3", "sl4", "gl3"])
def test_principal_triple(name):
    g = algebra(name)
    e, h, f = principal_triple(g)
    assert g.bracket(e, f) == h
    assert g.bracket(h, e) == la.scale(2, e)
    assert g.bracket(h, f) == la.scale(-2, f)


def test_principal_triple_sl3_values():
    g = algebra("sl3")
    e, h, f = principal_triple(g)
    assert list(g.matrix(h)) == [(2, 0, 0), (0, 0, 0), (0, 0, -2)]
    assert list(g.matrix(f)) == [(0, 0, 0), (2, 0, 0), (0, 2, 0)]


def test_from_matrices_detects_non_closure():
    with pytest.raises(LieAlgebraError):
        from_matrices(["a", "b"], [[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
