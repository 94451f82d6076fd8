import itertools

import pytest
import sympy

from conftest import algebra, cartan, corner_sl2, invariants
from liepoisson import fixtures
from liepoisson import linalg as la
from liepoisson.algebra import (
    LieAlgebraError,
    UnsupportedAlgebraError,
    cartan_splitting,
    make_splitting,
    trace_form,
)
from liepoisson.poisson import poisson_bracket
from liepoisson.poly import term_cap
from liepoisson.polyring import bidegree
from liepoisson.subalgebras import (
    GeneratedSubalgebra,
    Verdict,
    criterion_polynomial,
    criterion_ring,
    criterion_verdict,
    f_invariance_defects,
    find_witness,
    generate_MF,
    generate_Z,
    generate_Ztilde,
    mf_identity_check,
    near_pure_components,
    pairwise_bracket_report,
    gl_sl_transfer,
    vandermonde_consistency,
)

S, SP = sympy.symbols("s sp")


def _corner_projection(M):
    """Trace-form projection of a 4x4 matrix onto the lower-right sl_2."""
    P = sympy.zeros(4)
    P[2, 3], P[3, 2] = M[2, 3], M[3, 2]
    d = (M[2, 2] - M[3, 3]) / 2
    P[2, 2], P[3, 3] = d, -d
    return P


def test_criterion_value_matches_matrix_computation():
    # independent route: d tr X^k = k X^(k-1), projected with sympy matrices
    G = sympy.Matrix(fixtures.GAMMA)
    Gf = _corner_projection(G)
    Gm = G - Gf
    U = 3 * _corner_projection((Gf + S * Gm) ** 2)
    V = 4 * _corner_projection((Gf + SP * Gm) ** 3)
    oracle = sympy.expand((Gf * (U * V - V * U)).trace())
    assert oracle == -24 * S**2 * SP**3

    g, split, inv = algebra("gl4"), corner_sl2("gl4"), invariants("gl4")
    form = trace_form(g)
    gamma = form.flat(g.coords_of_matrix(fixtures.GAMMA))
    C = criterion_polynomial(inv, split, inv.labels.index("tr X^3"), inv.labels.index("tr X^4"))
    at_gamma = C.partial_evaluate(dict(enumerate(gamma.coords)))
    assert at_gamma.pretty() == "-24*s^2*s'^3"
    swapped = criterion_polynomial(inv, split, 3, 2).partial_evaluate(dict(enumerate(gamma.coords)))
    assert swapped.pretty() == "24*s^3*s'^2"


def test_criterion_ring_names():
    R = criterion_ring(algebra("sl2"))
    assert R.names == ("gamma1", "gamma2", "gamma3", "s", "s'")


@pytest.mark.parametrize(
    "name,which,expected",
    [
        ("sl3", "corner", Verdict.COMMUTATIVE),
        ("gl3", "corner", Verdict.COMMUTATIVE),
        ("sl4", "corner", Verdict.NOT_COMMUTATIVE),
        ("gl4", "corner", Verdict.NOT_COMMUTATIVE),
        ("sl3", "cartan", Verdict.COMMUTATIVE),
        ("gl4", "cartan", Verdict.COMMUTATIVE),
    ],
)
def test_criterion_agrees_with_brackets(name, which, expected):
    split = corner_sl2(name) if which == "corner" else cartan(name)
    inv = invariants(name)
    crit = criterion_verdict(inv, split)
    z = generate_Z(inv, split)
    brackets = pairwise_bracket_report(z)
    assert crit.verdict is expected
    assert brackets.verdict is expected
    if expected is Verdict.NOT_COMMUTATIVE:
        # the witness point has nonzero s, s'
        pt = crit.witness.witness_point
        assert pt[-1] and pt[-2]
        w = brackets.witness
        assert w.bracket.evaluate(w.witness_point) != 0
        assert w.bracket_term_count == len(w.bracket)
    else:
        assert all(not p.bracket for p in brackets.pairs)


def test_sl4_witness_pair():
    z = generate_Z(invariants("sl4"), corner_sl2("sl4"))
    w = pairwise_bracket_report(z, stop_at_first=True).witness
    assert [z.labels[i] for i in w.pair] == ["tr X^3 (1, 2)", "tr X^4 (1, 3)"]


def test_z_generators_are_f_invariant_and_bihomogeneous():
    split = corner_sl2("gl4")
    z = generate_Z(invariants("gl4"), split)
    assert z.count == 10
    assert f_invariance_defects(z.gens, split) == []
    for P, tag in zip(z.gens, z.tags):
        assert bidegree(P, split) == tag.bidegree


@pytest.mark.parametrize("name,count", [("sl2", 2), ("sl3", 5), ("sl4", 9), ("gl3", 6)])
def test_cartan_generator_counts(name, count):
    assert generate_Z(invariants(name), cartan(name)).count == count
    assert generate_Ztilde(invariants(name), cartan(name)).count == count


def test_ztilde_labels_and_requirements():
    zt = generate_Ztilde(invariants("sl3"), cartan("sl3"))
    assert zt.labels[:2] == ["t1 (1, 0)", "t2 (1, 0)"]
    assert all(tag.bidegree[1] > 0 for tag in zt.tags[2:])
    with pytest.raises(UnsupportedAlgebraError):
        generate_Ztilde(invariants("sl3"), corner_sl2("sl3"))


def test_near_pure_components_appear_off_cartan():
    assert near_pure_components(invariants("sl4"), cartan("sl4")) == []
    # tr X has bidegree (0, 1) because f is traceless
    found = [label for label, _ in near_pure_components(invariants("gl4"), corner_sl2("gl4"))]
    assert found == ["tr X^1", "tr X^3"]


def test_vandermonde_consistency():
    assert vandermonde_consistency(invariants("gl4"), corner_sl2("gl4"))
    assert vandermonde_consistency(invariants("sl3"), cartan("sl3"))


def test_mismatched_algebras():
    with pytest.raises(LieAlgebraError):
        generate_Z(invariants("sl3"), cartan("gl3"))


def test_subalgebra_rejects_zero_generators():
    inv = invariants("sl2")
    with pytest.raises(ValueError):
        GeneratedSubalgebra("Z", (inv.gens[0].ring.zero(),), (None,), None, inv)


def test_mf_generators_commute():
    g = algebra("sl3")
    form = trace_form(g)
    gamma = form.flat(la.lincomb([1, 2], list(cartan("sl3").f_basis)))
    mf = generate_MF(invariants("sl3"), gamma)
    assert mf.labels == ["D^0 tr X^2", "D^1 tr X^2", "D^0 tr X^3", "D^1 tr X^3", "D^2 tr X^3"]
    assert pairwise_bracket_report(mf).verdict is Verdict.COMMUTATIVE


def test_parallel_report_equals_serial():
    z = generate_Z(invariants("gl4"), corner_sl2("gl4"))
    serial = pairwise_bracket_report(z)
    parallel = pairwise_bracket_report(z, jobs=2)
    assert serial.to_dict(timings=False) == parallel.to_dict(timings=False)
    for a, b in zip(serial.pairs, parallel.pairs):
        assert a.bracket == b.bracket


def test_term_cap_marks_pairs_undecided():
    z = generate_Z(invariants("gl4"), corner_sl2("gl4"))
    with term_cap(3):
        report = pairwise_bracket_report(z)
    assert report.verdict in (Verdict.UNDECIDED, Verdict.NOT_COMMUTATIVE)
    assert report.undecided
    # a fresh splitting so that no cached differentials are reused
    fresh = cartan_splitting(algebra("sl3"))
    with term_cap(3):
        crit = criterion_verdict(invariants("sl3"), fresh)
    assert crit.verdict is Verdict.UNDECIDED


def test_report_schema():
    z = generate_Z(invariants("sl4"), corner_sl2("sl4"))
    d = pairwise_bracket_report(z).to_dict(timings=False)
    pair = d["pairs"][0]
    assert set(pair) == {"pair", "verdict", "witness_point", "bracket_term_count", "elapsed"}
    assert pair["elapsed"] is None
    assert d["pairs_total"] == len(list(itertools.combinations(range(z.count), 2)))


def test_find_witness():
    R = criterion_ring(algebra("sl2"))
    P = R.var("s") * R.var("s'") - R.var("gamma1")
    pt = find_witness(P, seed=1, nonzero_slots=(3, 4))
    assert P.evaluate(pt) != 0 and pt[3] and pt[4]
    assert find_witness(R.zero()) is None
    assert find_witness(P, preferred=[(0, 0, 0, 2, 3)]) == (0, 0, 0, 2, 3)
    assert find_witness(P, seed=1, nonzero_slots=(3, 4)) == pt


@pytest.mark.parametrize("name,h", [("gl2", (0, 1)), ("gl3", (0, 0, 1)), ("gl3", (1, 2, 4))])
def test_mf_identity(name, h):
    g = algebra(name)
    n = g.rank_n
    x = g.coords_of_matrix([[h[i] if i == j else 0 for j in range(n)] for i in range(n)])
    split = cartan_splitting(g, [x], trace_form(g))
    assert mf_identity_check(invariants(name), split, points=3)


def test_transfer_between_gl_and_sl():
    corner = generate_Z(invariants("gl4"), corner_sl2("gl4"))
    rep = gl_sl_transfer(corner)
    assert rep and rep.gl_verdict is Verdict.NOT_COMMUTATIVE
    g = algebra("gl3")
    sl_cartan = [la.sub(g.basis_vector("E11"), g.basis_vector("E22")), la.sub(g.basis_vector("E22"), g.basis_vector("E33"))]
    split = make_splitting(g, trace_form(g), sl_cartan, kind="cartan")
    rep = gl_sl_transfer(generate_Z(invariants("gl3"), split))
    assert rep and rep.gl_verdict is Verdict.COMMUTATIVE


def test_brackets_of_cartan_z_vanish_symbolically():
    z = generate_Z(invariants("gl3"), cartan("gl3"))
    for P, Q in itertools.combinations(z.gens, 2):
        assert not poisson_bracket(P, Q)
