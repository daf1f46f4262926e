"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the report, or via
pytest, which repeats the lines in its terminal summary.
"""

import math
import time
from fractions import Fraction

import numpy as np

from hessedyn.dynamics import (complex_periodic_points, has_superattracting_cycle, postcritical,
                               real_periodic_count)
from hessedyn.exactnum import EPS, SNumber, snum_hessian, snum_iota
from hessedyn.hesse import (basin_bound_check, gamma_curve_check, random_snumbers,
                            verify_group_relations, verify_j_functoriality)
from hessedyn.maps import CAYLEYAN, HESSIAN, IOTA
from hessedyn.ratmap import INF, ProjPoint, compose
from hessedyn.words import (all_hi_words, all_words, collision_scan, ends_with_h, measured_leading,
                            predicted_leading, psi)

REPORT = {}
SQRT3 = math.sqrt(3)


def report(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {detail}"
    REPORT[n] = line
    print(line)
    assert ok, line


def _match(points, targets, tol):
    if len(points) != len(targets):
        return False, math.inf
    left = list(targets)
    worst = 0.0
    for p in points:
        k = min(range(len(left)), key=lambda i: abs(p - left[i]))
        worst = max(worst, abs(p - left.pop(k)))
    return worst < tol, worst


def test_01_cayleyan_fixpoints():
    t = time.perf_counter()
    recs = complex_periodic_points(CAYLEYAN, 1)
    dt = time.perf_counter() - t
    has_inf = [r for r in recs if r.representative.is_inf()]
    finite = [r for r in recs if not r.representative.is_inf()]
    ok_pts, err = _match([r.value for r in finite], [-0.5, -0.5 + SQRT3 / 2, -0.5 - SQRT3 / 2], 1e-9)
    by_point = {round(r.value.real, 6): r.multiplier for r in finite}
    ok_mult = (len(has_inf) == 1 and abs(has_inf[0].multiplier) < 1e-9
               and abs(by_point[-0.5]) < 1e-9
               and abs(by_point[round(-0.5 + SQRT3 / 2, 6)] + SQRT3) < 1e-9
               and abs(by_point[round(-0.5 - SQRT3 / 2, 6)] - SQRT3) < 1e-9)
    report(1, ok_pts and ok_mult and len(recs) == 4 and dt < 1.0,
           f"fixpoints of c = {{inf, -1/2, -1/2+-sqrt3/2}} (max err {err:.1e}), "
           f"multipliers {{0, 0, sqrt3, -sqrt3}}, {dt:.3f} s")


def test_02_cayleyan_real_periodic_census():
    t = time.perf_counter()
    counts = [real_periodic_count(CAYLEYAN, n) for n in range(1, 6)]
    dt = time.perf_counter() - t
    report(2, counts == [4] * 5 and dt < 120, f"real periodic counts of c^n, n=1..5: {counts}, {dt:.1f} s")


def test_03_hessian_real_periodic_lower_bound():
    t = time.perf_counter()
    counts = [real_periodic_count(HESSIAN, 2 * m) for m in (1, 2, 3)]
    dt = time.perf_counter() - t
    bounds = [2 * (3 ** m - 1) for m in (1, 2, 3)]
    kind = ["equal" if c == b else f"excess {c - b}" for c, b in zip(counts, bounds)]
    report(3, all(c >= b for c, b in zip(counts, bounds)) and dt < 300,
           f"real fixpoints of h^(2m): {counts} >= {bounds} ({', '.join(kind)}), {dt:.1f} s")


def test_04_period_two_points_are_harmonic():
    harm = [complex(z) for z in np.roots([8, 0, 0, 20, 0, 0, -1])]
    p2h = [r.value for r in complex_periodic_points(HESSIAN, 2) if r.period == 2]
    ok_h, err_h = _match(p2h, harm, 1e-9)
    t_nonreal = [complex(-EPS / 2), complex(-EPS * EPS / 2)]
    targets = t_nonreal + [z for z in harm if abs(z.imag) > 1e-9]
    p2c = [r.value for r in complex_periodic_points(CAYLEYAN, 2) if r.period == 2]
    ok_c, err_c = _match(p2c, targets, 1e-9)
    report(4, ok_h and ok_c,
           f"period-2 of h = Harm ({len(p2h)} pts, err {err_h:.1e}); "
           f"period-2 of c = non-real T u Harm ({len(p2c)} pts, err {err_c:.1e})")


def test_05_leading_coefficient_law():
    words = list(all_words(5))
    bad = [w for w in words if measured_leading(w)[0] != predicted_leading(w)[0]
           or abs(measured_leading(w)[1]) != predicted_leading(w)[1]]
    report(5, len(words) == 62 and not bad,
           f"{len(words)} words: order 2^e(c), |lead| = (3/2)^(2^e(c) - 1) * 3^(sum 2^i a_i); "
           f"mismatches {bad}")


def test_06_free_semigroup():
    rep = collision_scan(6)
    a, b = "chchhc", "hhccch"
    same = abs(measured_leading(a)[1]) == abs(measured_leading(b)[1])
    report(6, rep.n_words == 126 and rep.free and same and psi(a) != psi(b),
           f"{rep.n_words} words, {rep.n_distinct} distinct maps; "
           f"{a}/{b} share |lead| = {abs(measured_leading(a)[1])} but differ")


def test_07_s_numbers():
    xs = random_snumbers(10_000, seed=0)
    excluded = (SNumber.finite(-1, -1), SNumber.finite(1, -2))
    closed = all(snum_iota(s).is_finite() and snum_hessian(s).kind in ("finite", "zero") for s in xs)
    avoid = all(snum_hessian(s) not in excluded for s in xs)
    words = list(all_hi_words(6))
    detector = all(ends_with_h(w) == (w[-1] == "h") for w in words)
    report(7, len(xs) == 10_000 and closed and avoid and detector,
           f"10^4 S-inputs closed={closed}, exclusion={avoid}; ends_with_h on {len(words)} words={detector}")


def test_08_exact_identities():
    t = time.perf_counter()
    c_is_h_iota = compose(HESSIAN, IOTA) == CAYLEYAN
    gamma = gamma_curve_check()
    j_ok = verify_j_functoriality()
    group = verify_group_relations()
    dt = time.perf_counter() - t
    report(8, c_is_h_iota and gamma["ok"] and j_ok and all(r.passed for r in group) and dt < 10,
           f"c = h o iota, Gamma factorization, j-functoriality, {len(group)} group relations, {dt:.2f} s")


def test_09_postcritical_and_dichotomy():
    T = {INF, ProjPoint(1, Fraction(-1, 2)), ProjPoint(1, -EPS / 2), ProjPoint(1, -EPS * EPS / 2)}
    F = {ProjPoint(1, 0), ProjPoint(1, 1), ProjPoint(1, EPS), ProjPoint(1, EPS * EPS)}
    pc, ph = postcritical(CAYLEYAN), postcritical(HESSIAN)
    sets = set(pc.orbit_points) == T and set(ph.orbit_points) == F | T and pc.exact and ph.exact
    words = list(all_words(4))
    bad = [w for w in words if bool(has_superattracting_cycle(psi(w))) != (w.ec >= 1)]
    report(9, sets and not bad,
           f"P(c) = T, P(h) = F u T exactly: {sets}; dichotomy over {len(words)} words, failures {bad}")


def test_10_real_degree():
    from hessedyn.ratmap import real_degree, signed_real_fixpoint_count
    r = (real_degree(HESSIAN), real_degree(CAYLEYAN))
    s = (signed_real_fixpoint_count(HESSIAN), signed_real_fixpoint_count(CAYLEYAN))
    report(10, r == (-1, -1) and s == (-2, -2), f"real degrees {r}, signed fixpoint sums {s}")


def test_11_basin_bounds():
    # 10^3 area-uniform samples in each region, 200 iterations
    inner = basin_bound_check(1000, 0.0, 1 - SQRT3 / 2, 1, seed=0)
    outer = basin_bound_check(1000, 1 + SQRT3 / 2, 4.0, 0, seed=1)
    witness = f", e.g. v = {outer[0][0]:.6f}" if outer else ""
    report(11, not inner and not outer,
           f"|v| < 1-sqrt3/2 -> -1/2: {1000 - len(inner)}/1000; "
           f"|v| > 1+sqrt3/2 -> inf: {1000 - len(outer)}/1000{witness}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
