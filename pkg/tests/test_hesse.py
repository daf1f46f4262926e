import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from hessedyn.exactnum import SNumber, snum_hessian
from hessedyn.hesse import (BOUNDARY, DEFAULT_SUITES, SPECIAL, SUITES, basin_bound_check,
                            basin_region_classifier, cayleyan_v, derive_cayleyan, gamma_curve_check,
                            random_snumbers, real_preimage_curve, run_suites, verify_M,
                            verify_group_relations, verify_j_functoriality)
from hessedyn.dynamics import basin_test
from hessedyn.maps import CAYLEYAN
from hessedyn.ratmap import INF

planar = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


def test_special_sets():
    assert len(SPECIAL.T) == 4 and len(SPECIAL.F) == 4
    harm = SPECIAL.harm
    assert len(harm) == 6
    for z in harm:
        assert abs(8 * z ** 6 + 20 * z ** 3 - 1) < 1e-12


def test_group_relations():
    res = verify_group_relations()
    assert len(res) == 13 and all(r.passed for r in res), [r.id for r in res if not r.passed]


def test_cayleyan_from_flex_tangent():
    assert derive_cayleyan().cayleyan == CAYLEYAN


def test_gamma_curve():
    g = gamma_curve_check()
    assert g["ok"] and g["proportional"] and len(g["nodes"]) == 4


def test_j_functoriality():
    assert verify_j_functoriality()


def test_real_preimage_curve():
    m = verify_M()
    assert m["ok"]
    # the non-real critical points of c have x |l|^2 = 1/16, not -1/8
    assert all(abs(v - 1 / 16) < 1e-12 for v in m["nonreal_critical_xr2"])


@given(planar)
def test_real_preimages_lie_on_the_curve(lam):
    assume(abs(lam) > 1e-3)
    w = CAYLEYAN(lam)
    if abs(w.imag) < 1e-12 * (1 + abs(w)) and abs(lam.imag) > 1e-3:
        assert real_preimage_curve(lam, tol=1e-6)


@given(planar)
def test_boundary_classifier_predicts_growth(v):
    try:
        _, sign = basin_region_classifier(v, tol=1e-6)
    except ValueError:
        return
    assume(abs(v - 0.5) > 1e-6 and abs(v) > 1e-9)
    grow = abs(cayleyan_v(v)) - abs(v)
    assume(abs(grow) > 1e-9)
    assert (grow > 0) == (sign > 0)


def test_classifier_regions():
    assert basin_region_classifier(0.8)[0] == "inside-both"
    assert basin_region_classifier(10)[0] == "outside-both"
    assert basin_region_classifier(0.05)[0] == "inner-circle-only"
    assert basin_region_classifier(2)[0] == "outer-circle-only"


@given(st.floats(0, 2 * math.pi), st.floats(1.001, 3))
def test_orbits_beyond_escape_radius_grow(t, k):
    v = BOUNDARY.escape_radius * k * complex(math.cos(t), math.sin(t))
    for _ in range(5):
        w = cayleyan_v(v)
        assert abs(w) > abs(v)
        v = w


def test_inner_disk_is_captured():
    assert basin_bound_check(300, 0.0, BOUNDARY.capture_radius, 1, seed=4) == []


def test_counterexample_outside_one_plus_half_sqrt3():
    v = complex(2.00288904, -0.17691261)
    assert abs(v) > 1 + math.sqrt(3) / 2
    assert basin_test(CAYLEYAN, v - 0.5, [INF, Fraction(-1, 2)]) == 1


def test_random_snumbers_are_seeded():
    assert random_snumbers(50, 3) == random_snumbers(50, 3)
    assert all(isinstance(s, SNumber) and s.is_finite() for s in random_snumbers(50, 3))


def test_excluded_values_not_hit():
    for s in random_snumbers(2000, 11):
        assert snum_hessian(s) not in (SNumber.finite(-1, -1), SNumber.finite(1, -2))


def test_suite_registry():
    assert "basin-bounds" in SUITES and "basin-bounds" not in DEFAULT_SUITES


@pytest.mark.parametrize("name", ["group-relations", "identities", "postcritical", "real-degree",
                                  "harmonic", "leading-law", "julia-dichotomy"])
def test_quick_suites_pass(name):
    res = run_suites([name])
    assert res and all(r.passed for r in res), [r.as_dict() for r in res if not r.passed]
    assert all(r.anchor for r in res)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["nope"])


def test_classifier_examples():
    region, sign = basin_region_classifier(0.9)
    assert region == "outer-circle-only" and sign < 0
    assert abs(cayleyan_v(0.9)) < 0.9
    # v = 2 is inside the outer circle: the modulus shrinks there
    region, sign = basin_region_classifier(2)
    assert sign < 0 and cayleyan_v(2) == pytest.approx(-8 / 9)


def test_real_preimage_curve_examples():
    assert real_preimage_curve(-0.5)
    z = -0.25 * (1 + 1j * math.sqrt(3))
    assert z.real * abs(z) ** 2 == pytest.approx(-1 / 16)
    assert not real_preimage_curve(z)
