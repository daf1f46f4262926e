import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessedyn.errors import DegreeMismatch, NotFixedError
from hessedyn.exactnum import EPS, BinaryForm
from hessedyn.maps import CAYLEYAN, GAMMA, HESSIAN, IOTA, PHI
from hessedyn.ratmap import (INF, ProjPoint, RationalSelfMap, chordal, compose, cycle_multiplier,
                             fixed_point_form, iterate, multiplier_at, ramification_form,
                             real_degree, signed_real_fixpoint_count, taylor_at_fixpoint)

small = st.integers(-6, 6)
rats = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


def _build(pair):
    den, num = pair
    try:
        f = RationalSelfMap(den, num, reduce=True)
    except (ValueError, DegreeMismatch):
        return None
    return f if f.degree >= 1 else None


def maps(max_deg=3):
    pairs = st.integers(1, max_deg).flatmap(
        lambda d: st.tuples(st.lists(small, min_size=d + 1, max_size=d + 1),
                            st.lists(small, min_size=d + 1, max_size=d + 1)))
    return pairs.map(_build).filter(lambda f: f is not None)


def test_affine_formulas():
    x = Fraction(3, 7)
    assert HESSIAN(x) == -(1 + 2 * x ** 3) / (6 * x ** 2)
    assert CAYLEYAN(x) == (1 - 4 * x ** 3) / (6 * x)
    assert IOTA(x) == -1 / (2 * x)
    assert HESSIAN(0) == math.inf and CAYLEYAN(math.inf) == math.inf


def test_fixpoint_form_of_cayleyan(oracle):
    # descending oracle coefficients of 4l^3 + 6l^2 - 1 up to sign, plus the root at infinity
    phi = fixed_point_form(CAYLEYAN)
    assert phi.order_at_infinity() == 1
    affine = [c for c in phi.coeffs[:-1]]
    expect = oracle["cayleyan_fixpoint_poly"][::-1]
    assert affine == expect or affine == [-c for c in expect]


def test_cayleyan_multipliers(oracle):
    for x, m in oracle["cayleyan_fixpoints"]:
        assert multiplier_at(CAYLEYAN, complex(x)) == pytest.approx(m, abs=1e-9)
    assert multiplier_at(CAYLEYAN, INF) == 0
    assert multiplier_at(CAYLEYAN, Fraction(-1, 2)) == 0


def test_not_fixed_raises():
    with pytest.raises(NotFixedError):
        multiplier_at(CAYLEYAN, 1)


def test_hessian_fixpoints_are_the_triangles():
    for p in (INF, ProjPoint(1, Fraction(-1, 2)), ProjPoint(1, -EPS / 2), ProjPoint(1, -EPS * EPS / 2)):
        assert HESSIAN.apply_point(p) == p
        assert multiplier_at(HESSIAN, p) == pytest.approx(-3, abs=1e-9)


def test_exact_taylor_at_infinity():
    td = taylor_at_fixpoint(CAYLEYAN, INF)
    assert td.a == 0 and td.h == 2 and td.b == Fraction(-3, 2)
    td = taylor_at_fixpoint(HESSIAN, INF)
    assert td.a == -3


def test_degree_and_composition(oracle):
    hc = compose(HESSIAN, CAYLEYAN)
    assert hc.degree == oracle["word_degrees"]["hc"]
    for x in (Fraction(1, 3), Fraction(-5, 2), 2):
        assert hc(x) == HESSIAN(CAYLEYAN(x))


def test_cayleyan_is_hessian_after_iota():
    assert compose(HESSIAN, IOTA) == CAYLEYAN


def test_gamma_has_order_three():
    assert iterate(GAMMA, 3) == RationalSelfMap(BinaryForm((1, 0)), BinaryForm((0, 1)))


def test_phi_is_an_involution():
    assert PHI != iterate(PHI, 2)
    assert iterate(PHI, 2) == RationalSelfMap(BinaryForm((1, 0)), BinaryForm((0, 1)))


@given(maps(), maps(), maps())
def test_composition_associative(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@given(maps(), maps(), rats)
def test_composition_evaluates_pointwise(f, g, x):
    try:
        expect = f.apply_point(g.apply_point(ProjPoint(1, x)))
    except ZeroDivisionError:
        return
    assert compose(f, g).apply_point(ProjPoint(1, x)) == expect


@given(maps(), st.integers(-20, 20).filter(bool))
def test_scaling_does_not_change_the_map(f, k):
    g = RationalSelfMap(f.den * k, f.num * k)
    assert f == g and hash(f) == hash(g)


@given(maps(max_deg=4))
def test_ramification_degree(f):
    if f.degree < 2:
        return
    assert ramification_form(f).degree == 2 * f.degree - 2


@given(maps(max_deg=4))
def test_real_fixpoints_and_real_degree(f):
    # indices sign(a - 1) sum to minus the Lefschetz number 1 - r
    try:
        r = real_degree(f)
        s = signed_real_fixpoint_count(f)
    except Exception:
        return
    assert s == r - 1
    assert abs(r) <= f.degree and (f.degree - r) % 2 == 0


def test_real_degree_of_hesse_maps():
    assert real_degree(HESSIAN) == -1
    assert real_degree(CAYLEYAN) == -1
    assert signed_real_fixpoint_count(HESSIAN) == -2
    assert signed_real_fixpoint_count(CAYLEYAN) == -2


def test_projpoint_equality():
    assert ProjPoint(2, 4) == ProjPoint(1, 2)
    assert ProjPoint(0, 5) == INF
    assert ProjPoint(1, 2.0 + 1e-15) == ProjPoint(1, Fraction(2))
    assert chordal(INF, ProjPoint(1, 0)) == pytest.approx(1.0)


@given(maps(max_deg=2))
def test_cycle_multiplier_of_fixpoint_matches(f):
    phi = fixed_point_form(f)
    for z in phi.numeric_roots():
        p = ProjPoint.of(z)
        try:
            m = multiplier_at(f, p)
        except NotFixedError:
            continue
        assert cycle_multiplier(f, [p]) == pytest.approx(m, rel=1e-9, abs=1e-9)
