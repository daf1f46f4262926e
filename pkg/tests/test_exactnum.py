import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessedyn.exactnum import EPS, BinaryForm, CycloRat, SNumber, normalize_forms, snum_hessian, snum_iota
from hessedyn.exactnum import _mul_generic, _mul_int

fracs = st.builds(Fraction, st.integers(-10 ** 4, 10 ** 4), st.integers(1, 50))
cyclo = st.builds(CycloRat, fracs, fracs)
nonzero_cyclo = cyclo.filter(bool)
EPS_C = cmath.exp(2j * cmath.pi / 3)


def test_eps_is_primitive_cube_root():
    assert EPS ** 3 == 1
    assert EPS * EPS + EPS + 1 == 0
    assert abs(complex(EPS) - EPS_C) < 1e-15


@given(cyclo, cyclo, cyclo)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == 0


@given(nonzero_cyclo)
def test_inverse(x):
    assert x * x.inverse() == 1
    assert x / x == 1


@given(cyclo, cyclo)
def test_embedding_is_a_ring_map(x, y):
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-6 * (1 + abs(complex(x) * complex(y)))


@given(cyclo)
def test_norm_is_conjugate_product(x):
    assert x * x.conj() == x.norm()
    assert x.norm() >= 0


# S-numbers -------------------------------------------------------------------

odd = st.integers(-999, 999).filter(lambda n: n % 2)
snums = st.builds(lambda a, b, e: SNumber.finite(Fraction(a, abs(b)), e),
                  odd, odd, st.integers(-40, 40).filter(lambda e: e % 3))


@given(snums)
def test_iota_is_an_involution_on_s(s):
    t = snum_iota(s)
    assert t.is_finite()
    assert snum_iota(t) == s
    assert float(t) == pytest.approx(-1 / (2 * float(s)), rel=1e-12)


@given(snums)
def test_hessian_keeps_s_closed(s):
    t = snum_hessian(s)
    assert t.kind in ("finite", "zero")
    x = float(s)
    assert float(t) == pytest.approx(-(1 + 2 * x ** 3) / (6 * x * x), rel=1e-9, abs=1e-12)


def test_hessian_zero_exactly_at_minus_cube_root_of_half():
    assert snum_hessian(SNumber.finite(-1, -1)).kind == "zero"


def test_snumber_rejects_rationals():
    with pytest.raises(ValueError):
        SNumber("finite", 3, 5, 3)
    with pytest.raises(ValueError):
        SNumber("finite", 2, 5, 1)


# binary forms ------------------------------------------------------------------

int_lists = st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=40)


@given(int_lists, int_lists)
def test_kronecker_product_matches_schoolbook(a, b):
    assert _mul_int(a, b) == _mul_generic(a, b)


@given(int_lists, int_lists)
def test_gauss_lemma(a, b):
    f, g = BinaryForm(a), BinaryForm(b)
    if f.is_zero() or g.is_zero():
        return
    assert (f * g).content() == f.content() * g.content()


@given(int_lists, st.integers(-50, 50).filter(bool))
def test_normalization_ignores_scalars(a, k):
    f = BinaryForm(a)
    if f.is_zero():
        return
    (n1,) = normalize_forms(f)
    (n2,) = normalize_forms(f * k)
    assert n1 == n2
    assert n1.content() == 1
    assert next(c for c in n1.coeffs if c) > 0


@given(st.lists(cyclo, min_size=2, max_size=5), nonzero_cyclo)
def test_cyclotomic_normalization_ignores_scalars(cs, k):
    f = BinaryForm(cs)
    if f.is_zero():
        return
    g = BinaryForm([c * k for c in cs])
    assert normalize_forms(f) == normalize_forms(g)


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=6),
       st.integers(-9, 9), st.integers(-9, 9))
def test_evaluation_is_homogeneous(cs, x, y):
    f = BinaryForm(cs)
    assert f(3 * x, 3 * y) == 3 ** f.degree * f(x, y)


def test_substitution_composes():
    f = BinaryForm((1, 2, 3))
    g0, g1 = BinaryForm((1, 1)), BinaryForm((0, 2))
    h = f.substitute(g0, g1)
    for x0, x1 in [(1, 2), (3, -1), (0, 1)]:
        assert h(x0, x1) == f(g0(x0, x1), g1(x0, x1))


def test_order_at_infinity():
    assert BinaryForm((1, 0, 0, 0)).order_at_infinity() == 3
    assert BinaryForm((0, 0, 1)).order_at_infinity() == 0
