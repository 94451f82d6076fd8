import pytest

from conftest import algebra, cartan, invariants
from liepoisson import linalg as la
from liepoisson.algebra import Covector, UnsupportedAlgebraError, centralizer, killing_form, principal_triple, trace_form
from liepoisson.invariants import trace_power_invariants
from liepoisson.ranklab import (
    PreconditionError,
    SpanReport,
    b_of,
    completeness_certificate,
    differential_span,
    generic_wall_point,
    index_of,
    is_generic_wall_point,
    is_regular,
    jacobian_rank,
    relMF_span_check,
    subregular_containment_check,
    _wall_target,
    trdeg_lower_bound,
)
from liepoisson.subalgebras import generate_Z, generate_Ztilde


def test_span_report_basics():
    a = SpanReport.of([(1, 0, 0), (2, 0, 0), (0, 1, 0)], 3)
    assert a.rank == a.dim == 2
    assert a.basis == [(1, 0, 0), (0, 1, 0)]
    assert a.contains((3, -1, 0)) and not a.contains((0, 0, 1))
    b = SpanReport.of([(0, 0, 5)], 3)
    assert (a + b).rank == 3
    assert a.contains(SpanReport.of([(1, 1, 0)], 3))
    assert a.equals(SpanReport.of([(1, 1, 0), (1, -1, 0)], 3))
    assert a.to_dict() == {"dim": 2, "basis": [["1", "0", "0"], ["0", "1", "0"]]}


@pytest.mark.parametrize(
    "name,ind,b", [("sl2", 1, 2), ("gl2", 2, 3), ("sl3", 2, 5), ("gl3", 3, 6), ("sl4", 3, 9), ("gl4", 4, 10)]
)
def test_index_and_b(name, ind, b):
    g = algebra(name)
    assert index_of(g) == ind
    assert index_of(g, seed=7, trials=3) == ind
    assert b_of(g) == b == (g.dim + ind) // 2


def test_index_is_independent_of_the_form():
    g = algebra("sl3")
    for form in (trace_form(g), killing_form(g)):
        e, h, f = principal_triple(g)
        assert is_regular(g, form.flat(la.add(h, e)))
        assert not is_regular(g, form.flat(generic_wall_point(g, 1)))


def test_regularity_examples():
    g = algebra("sl2")
    assert is_regular(g, Covector([1, 0, 0]))
    assert not is_regular(g, Covector([0, 0, 0]))


@pytest.mark.parametrize("name", ["sl2", "sl3", "sl4", "gl3"])
def test_jacobian_rank_reaches_b(name):
    z = generate_Z(invariants(name), cartan(name))
    jr = jacobian_rank(z)
    assert jr.rank == b_of(algebra(name)) == trdeg_lower_bound(z)
    assert jr.generator_count == z.count
    assert jr.to_dict()["rank"] == jr.rank


def test_jacobian_rank_detects_dependence():
    inv = invariants("sl3")
    H2, H3 = inv.gens
    assert jacobian_rank([H2, H3, H2 * H3, H2.scale(5)]).rank == 2


def test_completeness_certificate():
    g = algebra("sl3")
    form = trace_form(g)
    zt = generate_Ztilde(invariants("sl3"), cartan("sl3"))
    e, h, f = principal_triple(g)
    pt = form.flat(la.add(h, e))
    assert completeness_certificate(zt, pt)
    assert differential_span(zt, pt).rank == 5
    # the invariants alone are far from complete
    assert not completeness_certificate(list(invariants("sl3").gens), pt)
    with pytest.raises(PreconditionError):
        completeness_certificate(zt, form.flat(generic_wall_point(g, 1)))


def test_relmf_cases_sl3():
    g = algebra("sl3")
    split = cartan("sl3")
    inv = invariants("sl3")
    zt = generate_Ztilde(inv, split)
    e, h, f = principal_triple(g)
    for x in (e, f, la.add(e, f)):
        r = relMF_span_check(zt, h, x, inv)
        assert r.passed and r.h_regular
        assert r.dims["d_(h+x) Ztilde"] == r.dims["d_h(MF_x)"] == r.dims["d_x(MF_h)"]
    wall = relMF_span_check(zt, generic_wall_point(g, 2), la.add(e, f), inv)
    assert wall.passed and not wall.h_regular


def test_relmf_preconditions():
    g = algebra("sl3")
    split = cartan("sl3")
    inv = invariants("sl3")
    zt = generate_Ztilde(inv, split)
    e, h, f = principal_triple(g)
    with pytest.raises(PreconditionError):
        relMF_span_check(zt, e, h, inv)
    # s * E13 is subregular for every s, so the line never meets the regular set
    r = relMF_span_check(zt, la.zeros(g.dim), g.basis_vector("E13"), inv)
    assert r.status == "inconclusive" and not r


def test_relmf_with_killing_form_agrees():
    g = algebra("sl3")
    split = cartan("sl3")
    inv = trace_power_invariants(g, killing_form(g))
    zt = generate_Ztilde(inv, split)
    e, h, f = principal_triple(g)
    assert relMF_span_check(zt, h, la.add(e, f), inv, form=killing_form(g)).passed


def test_wall_points():
    g = algebra("sl3")
    h1 = generic_wall_point(g, 1)
    assert [g.matrix(h1)[i][i] for i in range(3)] == [-8, -8, 16]
    assert is_generic_wall_point(g, 1, h1)
    assert not is_generic_wall_point(g, 2, h1)
    assert not is_generic_wall_point(g, 1, la.zeros(g.dim))
    g4 = algebra("sl4")
    for nu in (1, 2, 3):
        assert is_generic_wall_point(g4, nu, generic_wall_point(g4, nu))


def test_wall_centralizer_dimension():
    g = algebra("sl4")
    form = trace_form(g)
    # a generic wall point is subregular: centralizer of dimension rank + 2
    assert centralizer(g, form.flat(generic_wall_point(g, 2))).rank == 5


@pytest.mark.parametrize("name,nu", [("sl3", 1), ("sl3", 2), ("sl4", 1), ("sl4", 2), ("sl4", 3)])
def test_subregular_containment(name, nu):
    assert subregular_containment_check(algebra(name), nu)


def test_subregular_containment_fails_off_the_wall():
    g = algebra("sl3")
    with pytest.raises(PreconditionError):
        subregular_containment_check(g, 1, h_prime=generic_wall_point(g, 2))
    with pytest.raises(PreconditionError):
        subregular_containment_check(g, 3)
    with pytest.raises(PreconditionError):
        subregular_containment_check(g, 1, s_samples=(0,))
    with pytest.raises(PreconditionError):
        subregular_containment_check(algebra("sl2"), 1)
    with pytest.raises(UnsupportedAlgebraError):
        subregular_containment_check(algebra("gl3"), 1)


def test_containment_is_not_trivial():
    # off the wall the centralizer is the whole Cartan, which H_nu + u^- misses
    g = algebra("sl3")
    h = g.coords_of_matrix([[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    cent = centralizer(g, trace_form(g).flat(h))
    assert not _wall_target(g, 1).contains(cent)
