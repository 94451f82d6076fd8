import random

import pytest

from conftest import algebra, cartan, corner_sl2, invariants
from liepoisson import linalg as la
from liepoisson.algebra import Covector, UnsupportedAlgebraError, killing_form, trace_form
from liepoisson.invariants import (
    NotCentralError,
    charpoly_invariants,
    custom_invariants,
    differential_commutes_with_centralizer,
    generic_matrix,
    kostant_span_check,
    restrict_to_cartan,
    trace_power_invariants,
    verify_centrality,
)
from liepoisson.ranklab import generic_wall_point

NAMES = ["gl2", "sl2", "gl3", "sl3", "gl4", "sl4"]


@pytest.mark.parametrize("name", NAMES)
def test_degrees_and_labels(name):
    n = int(name[2:])
    inv = invariants(name)
    first = 1 if name.startswith("gl") else 2
    assert inv.degrees == tuple(range(first, n + 1))
    assert inv.labels == tuple(f"tr X^{k}" for k in inv.degrees)
    assert inv.source == "trace-powers"
    assert len(inv) == n - first + 1


@pytest.mark.parametrize("name", NAMES)
def test_generators_are_central(name):
    for H in invariants(name).gens:
        assert verify_centrality(H)
    for H in charpoly_invariants(algebra(name)).gens:
        assert verify_centrality(H)


@pytest.mark.parametrize("name", ["gl2", "gl3", "gl4", "sl3", "sl4"])
def test_newton_identities_link_both_generating_sets(name):
    g = algebra(name)
    R = g.ring
    n = g.rank_n
    tp = dict(zip(invariants(name).degrees, invariants(name).gens))
    cp = dict(zip(charpoly_invariants(g).degrees, charpoly_invariants(g).gens))
    p = {k: tp.get(k, R.zero()) for k in range(1, n + 1)}
    e = {0: R.one(), **{k: cp.get(k, R.zero()) for k in range(1, n + 1)}}
    for k in range(1, n + 1):
        rhs = R.zero()
        for i in range(1, k + 1):
            rhs = rhs + (e[k - i] * p[i]).scale((-1) ** (i - 1))
        assert e[k].scale(k) == rhs


def test_generic_matrix_evaluates_to_the_element():
    g = algebra("sl3")
    form = trace_form(g)
    X = generic_matrix(g, form)
    rng = random.Random(0)
    for _ in range(3):
        x = tuple(rng.randint(-4, 4) for _ in range(g.dim))
        xi = form.flat(x)
        assert [tuple(e.evaluate(xi) for e in row) for row in X] == list(g.matrix(x))


def test_charpoly_on_sl2():
    inv = charpoly_invariants(algebra("sl2"))
    assert inv.labels == ("c2",)
    assert inv.gens[0].pretty() == "-E12*E21 - 1/4*H1^2"


def test_form_choice_only_rescales():
    g = algebra("sl2")
    t = trace_power_invariants(g, trace_form(g)).gens[0]
    k = trace_power_invariants(g, killing_form(g)).gens[0]
    # Killing form is 4x the trace form on sl_2, so covector coordinates scale by 1/4
    assert t == k.scale(16)


def test_custom_invariants_are_checked():
    g = algebra("sl2")
    H = invariants("sl2").gens[0]
    inv = custom_invariants(g, [H.scale(3)], ["Q"])
    assert inv.labels == ("Q",) and inv.degrees == (2,)
    with pytest.raises(NotCentralError) as info:
        custom_invariants(g, [H, g.ring.var(0)])
    assert info.value.position == 1
    with pytest.raises(ValueError):
        custom_invariants(g, [algebra("sl3").ring.var(0)])


def test_restriction_to_cartan():
    H = invariants("sl2").gens[0]
    assert restrict_to_cartan(H, cartan("sl2")).pretty() == "1/2*H1^2"
    with pytest.raises(UnsupportedAlgebraError):
        restrict_to_cartan(H, corner_sl2("sl3"))


def test_restriction_is_weyl_invariant():
    g = algebra("gl3")
    split = cartan("gl3")
    names = ["E11", "E22", "E33"]
    for H in invariants("gl3").gens:
        r = restrict_to_cartan(H, split)
        swapped = r.substitute([g.ring.var(names[[1, 0, 2][names.index(v)]]) if v in names else g.ring.var(v)
                                for v in g.ring.names])
        assert swapped == r


@pytest.mark.parametrize("name", ["sl2", "sl3", "gl3"])
def test_kostant_at_random_and_special_points(name):
    g = algebra(name)
    inv = invariants(name)
    rng = random.Random(5)
    for _ in range(6):
        xi = Covector([rng.randint(-4, 4) for _ in range(g.dim)])
        assert not kostant_span_check(inv, xi).mismatch
    zero = kostant_span_check(inv, Covector([0] * g.dim))
    assert not zero.is_regular and not zero.verdict


def test_kostant_on_nilpotents():
    g = algebra("sl3")
    form = trace_form(g)
    inv = invariants("sl3")
    regular_nilpotent = la.add(g.basis_vector("E12"), g.basis_vector("E23"))
    subregular = g.basis_vector("E13")
    assert kostant_span_check(inv, form.flat(regular_nilpotent)).verdict
    res = kostant_span_check(inv, form.flat(subregular))
    assert not res.is_regular and not res.mismatch


def test_differentials_are_central_in_centralizer():
    g = algebra("sl3")
    form = trace_form(g)
    for xi in (form.flat(generic_wall_point(g, 1)), form.flat(g.basis_vector("E13"))):
        for H in invariants("sl3").gens:
            assert differential_commutes_with_centralizer(H, xi)
