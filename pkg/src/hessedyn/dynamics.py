"""Periodic points, critical orbits, basins and Julia sampling."""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels, upoly
from .errors import (ConvergenceError, NotCriticallyFinite, ResourceBoundError,
                     check_budget)
from .exactnum import BinaryForm, CycloRat, cyclo_from_complex
from .ratmap import (INF, ProjPoint, _run_stages, chordal, cycle_multiplier,
                     fixed_point_form, iterate, ramification_form)

__all__ = [
    "PERIOD_FORM_BOUND", "CycleRecord", "PostcriticalReport", "SuperattractingResult",
    "UNRESOLVED", "periodic_point_form", "real_root_count_exact", "real_periodic_count",
    "complex_periodic_points", "classify_multiplier", "postcritical",
    "has_superattracting_cycle", "basin_test", "contraction_radius",
    "inverse_iteration_sample", "critical_points", "exact_critical_points",
    "superattracting_cycles", "basin_labels",
]

PERIOD_FORM_BOUND = 3 ** 6 + 1
PERIOD_TOL = 1e-8
SUPER_TOL = 1e-10
INDIFFERENT_TOL = 1e-9
UNRESOLVED = kernels.UNRESOLVED


# ---------------------------------------------------------------------------
# exact census


@lru_cache(maxsize=64)
def _iterate_cached(f, n):
    return iterate(f, n)


def periodic_point_form(f, n, bound=PERIOD_FORM_BOUND):
    """Fixed-point form of ``f^n``; its roots are the points of period dividing ``n``."""
    if n < 1:
        raise ValueError("period must be >= 1")
    if f.degree ** n + 1 > bound:
        raise ResourceBoundError(f"period form of degree {f.degree ** n + 1} exceeds {bound}")
    return fixed_point_form(_iterate_cached(f, n))


def _cyclic_reduce(p):
    """Write ``p = x^s * q(x^k)`` and fold the odd part of ``k`` into the variable.

    ``x -> x^m`` is a bijection of the reals for odd ``m``, so the real-root
    count of ``p`` is that of ``q(x^(k/m))`` plus one if ``s > 0``.
    """
    s = next(i for i, c in enumerate(p) if c)
    body = p[s:]
    k = 0
    for i, c in enumerate(body):
        if c:
            k = math.gcd(k, i)
    m = k
    while m and m % 2 == 0:
        m //= 2
    if m > 1:
        body = body[::m]
    return s, body


def real_root_count_exact(form):
    """Distinct real projective roots of an integer binary form (Sturm, exact)."""
    if not isinstance(form, BinaryForm):
        form = BinaryForm(form)
    if form.is_zero():
        raise ValueError("the zero form has every point as a root")
    if not form.is_integral():
        form = form.normalized()
        if not form.is_integral():
            raise TypeError("real root counting needs rational coefficients")
    cs = [int(c) for c in form.coeffs]
    at_inf = 1 if cs[-1] == 0 else 0
    p = upoly.strip(cs)
    if len(p) <= 1:
        return at_inf
    s, body = _cyclic_reduce(p)
    count = 1 if s > 0 else 0
    if len(body) > 1:
        count += upoly.count_real_roots(body)
    return count + at_inf


def real_periodic_count(f, n):
    return real_root_count_exact(periodic_point_form(f, n))


# ---------------------------------------------------------------------------
# complex census


@dataclass
class CycleRecord:
    representative: ProjPoint
    period: int
    multiplier: complex
    cls: str
    is_real: bool

    @property
    def value(self):
        return self.representative.to_complex()


def classify_multiplier(m):
    a = abs(m)
    if a < SUPER_TOL:
        return "Superattracting"
    if abs(a - 1) <= INDIFFERENT_TOL:
        return "Indifferent"
    return "Attracting" if a < 1 else "Repelling"


def _newton_polygon_start(coeffs, n):
    """Initial Aberth guesses on circles given by the upper hull of ``log|c_k|``."""
    pts = []
    for k in range(n + 1):
        c = coeffs[k]
        if c != 0:
            pts.append((k, math.log(abs(c)) if not isinstance(c, int) else _log_abs_int(c)))
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    z = []
    for (i, yi), (j, yj) in zip(hull, hull[1:]):
        r = math.exp((yi - yj) / (j - i))
        m = j - i
        for t in range(m):
            z.append(r * cmath.exp(2j * math.pi * (t + 0.25) / m + 0.4j * len(z) / max(n, 1)))
    if hull and hull[0][0] > 0:
        # a root of multiplicity hull[0][0] at zero
        z = [1e-3 * cmath.exp(2j * math.pi * t / hull[0][0]) for t in range(hull[0][0])] + z
    return np.array(z[:n], dtype=np.complex128)


def _log_abs_int(c):
    c = abs(c)
    b = c.bit_length()
    if b < 1000:
        return math.log(c)
    return math.log(c >> (b - 60)) + (b - 60) * math.log(2)


def _dedupe(points, tol):
    out = []
    for p in points:
        if all(chordal(p, q) >= tol for q in out):
            out.append(p)
    return out


def _orbit_numeric(f, p, steps):
    x0, x1 = p.pair()
    out = [ProjPoint(x0, x1)]
    for _ in range(steps):
        x0, x1 = _run_stages(f.stages, x0, x1)
        out.append(ProjPoint(x0, x1))
    return out


def _is_real_point(p):
    if p.is_inf():
        return True
    z = p.to_complex()
    return abs(z.imag) <= 1e-9 * (1 + abs(z))


def _sort_key(rec):
    z = rec.representative
    if z.is_inf():
        return (rec.period, 0, 0.0, 0.0)
    v = z.to_complex()
    return (rec.period, 1, round(v.real, 9), round(v.imag, 9))


def complex_periodic_points(f, n, maxiter=2000):
    """All points of period dividing ``n`` with minimal period, multiplier and class."""
    form = periodic_point_form(f, n)
    m_inf = form.order_at_infinity()
    n_aff = form.degree - m_inf
    pts = []
    if n_aff > 0:
        program = kernels.pack_program(_iterate_cached(f, n).stages)
        z0 = _newton_polygon_start(list(form.coeffs), n_aff)
        roots, _, conv = kernels.aberth(program, z0, maxiter=maxiter)
        if not conv.all():
            raise ConvergenceError(f"{int((~conv).sum())} of {n_aff} roots did not converge")
        pts = [ProjPoint(1, complex(z)) for z in roots]
    if m_inf:
        pts.insert(0, INF)
    pts = _dedupe(pts, PERIOD_TOL)
    records = []
    for p in pts:
        check_budget()
        orbit = _orbit_numeric(f, p, n)
        period = next((k for k in range(1, n + 1)
                       if n % k == 0 and chordal(orbit[k], p) < PERIOD_TOL), n)
        m = cycle_multiplier(f, orbit[:period])
        records.append(CycleRecord(p, period, m, classify_multiplier(m), _is_real_point(p)))
    records.sort(key=_sort_key)
    return records


# ---------------------------------------------------------------------------
# critical points and postcritical orbits


def _snap_exact(z, form, max_den=12):
    """Exact point of ``Q(eps)`` near ``z`` that is a root of ``form``, else ``None``."""
    if cmath.isinf(z):
        return INF if form.order_at_infinity() > 0 else None
    for den in range(1, max_den + 1):
        c = cyclo_from_complex(z, den)
        if abs(complex(c) - z) > 1e-6:
            continue
        if form(1, c) == 0:
            return ProjPoint(1, c).normalized()
    return None


@lru_cache(maxsize=256)
def exact_critical_points(m):
    """Critical points of a single map as exact ``Q(eps)`` points, or ``None``."""
    if m.degree < 2:
        return ()
    ram = ramification_form(m)
    out = []
    for z in ram.numeric_roots():
        p = _snap_exact(complex(z), ram)
        if p is None:
            return None
        if p not in out:
            out.append(p)
    return tuple(out)


def _preimages_numeric(m, p):
    """Preimages of ``p`` under a single map (with multiplicity), numerically."""
    y0, y1 = p.pair()
    g = [y0 * complex(a) - y1 * complex(b) for a, b in zip(m.num.coeffs, m.den.coeffs)]
    out = []
    while g and abs(g[-1]) < 1e-14 * max(abs(c) for c in g):
        g.pop()
        out.append(INF)
    if len(g) > 1:
        out.extend(ProjPoint(1, complex(z)) for z in np.roots(g[::-1]))
    return out


def critical_points(f):
    """Critical points of ``f`` with multiplicity, through its factorization."""
    stages = f.factors or (f,)
    # Ram(g_k o ... o g_1) = Ram(g_1) u g_1^{-1}(Ram(g_k o ... o g_2))
    pts = []
    for m in reversed(stages):
        pulled = []
        for p in pts:
            pulled.extend(_preimages_numeric(m, p))
        own = []
        if m.degree >= 2:
            ex = exact_critical_points(m)
            if ex is not None and len(ex) == len(set(ex)):
                ram = ramification_form(m)
                for z in ram.numeric_roots():
                    own.append(_snap_exact(complex(z), ram) or ProjPoint.of(complex(z)))
            else:
                own = [ProjPoint.of(complex(z)) for z in ramification_form(m).numeric_roots()]
        pts = own + pulled
    return pts


def _apply_exact(stages, p):
    for m in stages:
        p = m.apply_point(p)
    return p


def _critical_values_exact(f):
    stages = f.factors or (f,)
    vals = []
    for m in stages:
        crit = exact_critical_points(m)
        if crit is None:
            return None
        vals = [m.apply_point(v) for v in vals] + [m.apply_point(c) for c in crit]
        vals = list(dict.fromkeys(vals))
    return vals


@dataclass
class PostcriticalReport:
    """``postcritical_points`` is the union of the forward images ``f^i(Ram)``, ``i >= 1``;
    ``orbit_points`` also contains the critical points themselves."""

    critical_points: list
    orbit_points: list
    postcritical_points: list
    finite: bool
    bound_hit: bool
    exact: bool = False


def _point_key(p):
    if p.is_inf():
        return (0, 0.0, 0.0)
    v = p.to_complex()
    return (1, round(v.real, 12), round(v.imag, 12))


def postcritical(f, max_steps=50, dedup_tol=1e-9):
    """Forward orbits of the critical points until closure or ``max_steps``."""
    if f.degree < 2:
        raise ValueError("postcritical set needs degree >= 2")
    stages = f.factors or (f,)
    cvals = _critical_values_exact(f)
    if cvals is not None:
        crit = exact_critical_points(f) if len(stages) == 1 else critical_points(f)
        seen = list(cvals)
        frontier = list(cvals)
        steps = 0
        while frontier and steps < max_steps:
            check_budget()
            steps += 1
            nxt = []
            for p in frontier:
                q = _apply_exact(stages, p)
                if q not in seen:
                    seen.append(q)
                    nxt.append(q)
            frontier = nxt
        finite = not frontier
        post = sorted(seen, key=_point_key)
        orbit = _dedupe(sorted(list(crit) + post, key=_point_key), dedup_tol) \
            if not all(p.is_exact() for p in crit) else sorted(set(crit) | set(post), key=_point_key)
        return PostcriticalReport(list(crit), orbit, post, finite, not finite, True)
    return _postcritical_numeric(f, max_steps, dedup_tol)


def _postcritical_numeric(f, max_steps, dedup_tol):
    crit = _dedupe(critical_points(f), 1e-7)
    post = []
    bound_hit = False
    for c in crit:
        p = c
        for step in range(max_steps + 1):
            check_budget()
            x0, x1 = _run_stages(f.stages, *p.pair())
            p = ProjPoint(x0, x1)
            hit = next((q for q in post + crit if chordal(p, q) < dedup_tol), None)
            if hit is not None:
                if _accumulates(f, hit, max_steps, dedup_tol):
                    bound_hit = True
                    break
                if all(chordal(p, q) >= dedup_tol for q in post):
                    post.append(p)
                break
            post.append(p)
        else:
            bound_hit = True
    post.sort(key=_point_key)
    orbit = _dedupe(sorted(crit + post, key=_point_key), dedup_tol)
    return PostcriticalReport(crit, orbit, post, not bound_hit, bound_hit, False)


def _accumulates(f, q, max_steps, tol):
    """True when ``q`` sits on an attracting, non-superattracting cycle.

    A numerical orbit that "closes" there is converging to the cycle, not landing on it.
    """
    orbit = _orbit_numeric(f, q, max_steps)
    for k in range(1, len(orbit)):
        if chordal(orbit[k], q) < tol:
            m = abs(cycle_multiplier(f, orbit[:k]))
            return SUPER_TOL <= m < 1
    return True


# ---------------------------------------------------------------------------
# superattracting cycles


@dataclass
class SuperattractingResult:
    found: bool
    cycle: list = field(default_factory=list)

    def __bool__(self):
        return self.found


def _is_critical_exact(stages, p):
    for m in stages:
        if m.degree >= 2:
            ram = ramification_form(m)
            if ram(p.z0, p.z1) == 0:
                return True
        p = m.apply_point(p)
    return False


def has_superattracting_cycle(f, search_period_bound=24, max_steps=50):
    """Whether some cycle of period ``<= search_period_bound`` contains a critical point."""
    rep = postcritical(f, max_steps=max_steps)
    if rep.bound_hit:
        raise NotCriticallyFinite("critical orbits did not close within the step bound")
    stages = f.factors or (f,)
    for p in rep.postcritical_points:
        if rep.exact:
            cyc = [p]
            q = _apply_exact(stages, p)
            while q != p and len(cyc) < search_period_bound:
                cyc.append(q)
                q = _apply_exact(stages, q)
            if q != p:
                continue
            if any(_is_critical_exact(stages, c) for c in cyc):
                return SuperattractingResult(True, cyc)
        else:
            orbit = _orbit_numeric(f, p, search_period_bound)
            k = next((k for k in range(1, len(orbit)) if chordal(orbit[k], p) < PERIOD_TOL), None)
            if k is None:
                continue
            if abs(cycle_multiplier(f, orbit[:k])) < SUPER_TOL:
                return SuperattractingResult(True, orbit[:k])
    return SuperattractingResult(False, [])


def superattracting_cycles(f, max_period=4, max_steps=50):
    """Every cycle through a critical point (exact when the critical orbits are)."""
    try:
        rep = postcritical(f, max_steps=max_steps)
    except ValueError:
        return []
    stages = f.factors or (f,)
    cycles = []
    if rep.exact and rep.finite:
        seen = set()
        for p in rep.postcritical_points:
            if p in seen:
                continue
            cyc = [p]
            q = _apply_exact(stages, p)
            while q != p and len(cyc) <= len(rep.postcritical_points):
                cyc.append(q)
                q = _apply_exact(stages, q)
            if q == p and any(_is_critical_exact(stages, c) for c in cyc):
                seen.update(cyc)
                cycles.append(cyc)
        return cycles
    for n in range(1, max_period + 1):
        if f.degree ** n + 1 > PERIOD_FORM_BOUND:
            break
        for rec in complex_periodic_points(f, n):
            if rec.period == n and rec.cls == "Superattracting":
                orbit = _orbit_numeric(f, rec.representative, n - 1)
                if not any(chordal(orbit[0], q) < PERIOD_TOL for c in cycles for q in c):
                    cycles.append(orbit)
    return cycles


# ---------------------------------------------------------------------------
# basins


def _as_cycle(a):
    if isinstance(a, (list, tuple)):
        return [ProjPoint.of(x) for x in a]
    return [ProjPoint.of(a)]


def _chart_coord(p, use_u):
    x0, x1 = p.pair()
    return x0 / x1 if use_u else x1 / x0


def contraction_radius(f, cycle, samples=64):
    """Chordal radius around each cycle point inside which ``f^p`` contracts by 1/2.

    Checked on sample circles in the local chart (a numerical certificate).
    """
    p = len(cycle)
    g = iterate(f, p) if p > 1 else f
    best = math.inf
    for q in cycle:
        q = q.normalized()
        use_u = q.is_inf() or abs(q.to_complex()) > 1
        c = _chart_coord(q, use_u)
        r = 0.25
        while r > 1e-7:
            ok = True
            for rr in (r, r / 2, r / 4):
                for k in range(samples):
                    t = c + rr * cmath.exp(2j * math.pi * (k + 0.5) / samples)
                    pt = ProjPoint(t, 1) if use_u else ProjPoint(1, t)
                    x0, x1 = _run_stages(g.stages, *pt.pair())
                    img = ProjPoint(x0, x1)
                    if _use_same_chart_distance(img, c, use_u) > rr / 2:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                break
            r /= 2
        best = min(best, r / 4)
    return best


def _use_same_chart_distance(p, c, use_u):
    x0, x1 = p.pair()
    den = x1 if use_u else x0
    if abs(den) < 1e-300:
        return math.inf
    return abs((x0 if use_u else x1) / den - c)


def _check_attractors(f, attractors):
    cycles = [_as_cycle(a) for a in attractors]
    for cyc in cycles:
        m = cycle_multiplier(f, cyc)
        if abs(m) >= SUPER_TOL:
            raise ValueError(f"attractor {cyc} is not superattracting (multiplier {m})")
        for i, q in enumerate(cyc):
            img = f.apply_point(q) if not q.is_exact() else f.apply_point(q)
            if chordal(img, cyc[(i + 1) % len(cyc)]) > 1e-9:
                raise ValueError(f"{cyc} is not a cycle of the map")
    return cycles


def basin_test(f, z0, attractors, max_iter=200, capture_radius=1e-3):
    """Index of the attractor whose basin contains ``z0``, or ``UNRESOLVED``."""
    cycles = _check_attractors(f, attractors)
    radii = [min(capture_radius, contraction_radius(f, c)) for c in cycles]
    p = ProjPoint.of(z0)
    x0, x1 = p.pair()
    for it in range(max_iter + 1):
        if it:
            x0, x1 = _run_stages(f.stages, x0, x1)
        cur = ProjPoint(x0, x1)
        for j, cyc in enumerate(cycles):
            if any(chordal(cur, q) < radii[j] for q in cyc):
                return j
    return UNRESOLVED


def attractor_arrays(f, cycles, capture_radius):
    radii = [min(capture_radius, contraction_radius(f, c)) for c in cycles]
    a0, a1, lab, rad = [], [], [], []
    for j, cyc in enumerate(cycles):
        for q in cyc:
            x0, x1 = q.pair()
            a0.append(x0)
            a1.append(x1)
            lab.append(j)
            rad.append(radii[j])
    return (np.array(a0, dtype=np.complex128), np.array(a1, dtype=np.complex128),
            np.array(lab, dtype=np.int32), np.array(rad, dtype=np.float64))


def basin_labels(f, points, attractors, max_iter=200, capture_radius=1e-3, threads=1):
    """Vectorized ``basin_test`` over an array of complex starting points."""
    cycles = _check_attractors(f, attractors)
    a0, a1, lab, rad = attractor_arrays(f, cycles, capture_radius)
    z = np.asarray(points, dtype=np.complex128).ravel()
    inf = np.isinf(z)
    z0 = np.where(inf, 0, 1).astype(np.complex128)
    z1 = np.where(inf, 1, z)
    big = np.abs(z1) > 1
    z0 = np.where(big, z0 / np.where(big, z1, 1), z0)
    z1 = np.where(big, 1, z1)
    prog = kernels.pack_program(f.stages)
    labels, iters = kernels.basin_grid(prog, z0, z1, a0, a1, lab, rad, max_iter, threads)
    return labels.reshape(np.shape(points)), iters.reshape(np.shape(points))


# ---------------------------------------------------------------------------
# Julia sampling


def inverse_iteration_sample(f, n_points, seed, burn_in=64, chains=256, max_degree=27):
    """Backward orbits choosing a random preimage each step.

    The choice at step ``k`` comes from a Philox stream keyed by ``seed`` with
    counter ``k``, so the cloud depends only on the arguments.  Returns a
    complex array (infinity as ``inf``).
    """
    d = f.degree
    if d > max_degree:
        raise ResourceBoundError(f"degree {d} exceeds the per-step bound {max_degree}")
    if not f.is_rational() and not all(isinstance(c, (int, Fraction, CycloRat)) for c in f.num.coeffs):
        raise TypeError("unsupported coefficients")
    num = np.array([complex(c) for c in f.num.coeffs])
    den = np.array([complex(c) for c in f.den.coeffs])
    chains = max(1, min(chains, n_points))
    ang = 2 * np.pi * (np.arange(chains) + 0.5) / chains
    y0 = np.ones(chains, dtype=np.complex128)
    y1 = 0.3 + 0.7 * np.exp(1j * ang)
    out = []
    collected = 0
    step = 0
    while collected < n_points:
        check_budget()
        g = y0[:, None] * num[None, :] - y1[:, None] * den[None, :]
        lead = np.abs(g[:, -1])
        const = np.abs(g[:, 0])
        use_l = lead >= const
        poly = np.where(use_l[:, None], g, g[:, ::-1])  # ascending in the chosen chart
        roots = _batched_roots(poly)
        rng = np.random.Generator(np.random.Philox(key=seed, counter=step))
        pick = rng.integers(0, d, size=chains)
        r = roots[np.arange(chains), pick]
        x0 = np.where(use_l, 1, r)
        x1 = np.where(use_l, r, 1)
        sc = np.maximum(np.abs(x0), np.abs(x1))
        y0 = x0 / sc
        y1 = x1 / sc
        step += 1
        if step > burn_in:
            with np.errstate(divide="ignore", invalid="ignore"):
                z = np.where(y0 == 0, complex(math.inf, 0), y1 / np.where(y0 == 0, 1, y0))
            out.append(z)
            collected += chains
    return np.concatenate(out)[:n_points]


def _batched_roots(poly):
    """Roots of each row (ascending coefficients, nonzero top) via companion matrices."""
    k, n1 = poly.shape
    d = n1 - 1
    top = poly[:, -1]
    mon = poly[:, :-1] / top[:, None]
    comp = np.zeros((k, d, d), dtype=np.complex128)
    comp[:, 0, :] = -mon[:, ::-1]
    if d > 1:
        idx = np.arange(d - 1)
        comp[:, idx + 1, idx] = 1
    return np.linalg.eigvals(comp)
