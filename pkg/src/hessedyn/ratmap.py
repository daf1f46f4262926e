"""Rational self-maps of the projective line as pairs of binary forms.

A map is stored as ``(den, num) = (F0, F1)``; on points it acts by
``(l0 : l1) -> (F0(l0, l1) : F1(l0, l1))``, i.e. ``l -> F1(1, l) / F0(1, l)``
in the affine chart ``l = l1/l0``.  Pairs are jointly normalized after every
construction so that equality of maps is equality of coefficient tuples.
"""

import cmath
import math
from itertools import islice
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import upoly
from .errors import ConvergenceError, DegreeMismatch, NotFixedError
from .exactnum import BinaryForm, CycloRat, normalize_forms, substitute_forms

__all__ = [
    "ProjPoint", "INF", "RationalSelfMap", "compose", "identity", "iterate",
    "cycle_multiplier",
    "fixed_point_form", "ramification_form", "multiplier_at", "chart_derivative",
    "TaylorData", "taylor_at_fixpoint", "real_degree", "signed_real_fixpoint_count",
    "chordal", "is_exact_scalar",
]

FIXPOINT_TOL = 1e-9
SUPERATTRACTING_TOL = 1e-10

_EXACT = (int, Fraction, CycloRat)


def is_exact_scalar(x):
    return isinstance(x, _EXACT)


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class ProjPoint:
    """Homogeneous pair ``(z0 : z1)``; ``(0 : 1)`` is infinity."""

    z0: object
    z1: object

    @classmethod
    def of(cls, x):
        """Point from an affine value; ``math.inf``/``"inf"``/``None`` give infinity."""
        if isinstance(x, ProjPoint):
            return x
        if x is None or (isinstance(x, str) and x in ("inf", "oo", "infinity")):
            return INF
        if isinstance(x, (float, complex)) and cmath.isinf(x):
            return INF
        if isinstance(x, float):
            x = complex(x)
        return cls(1, x)

    def is_exact(self):
        return is_exact_scalar(self.z0) and is_exact_scalar(self.z1)

    def is_inf(self):
        return self.z0 == 0

    def normalized(self):
        if self.is_exact():
            if self.z0 == 0:
                return INF
            return ProjPoint(1, _simplify_scalar(self.z1 / _as_div(self.z0)))
        c0, c1 = complex(self.z0), complex(self.z1)
        s = max(abs(c0), abs(c1))
        if s == 0:
            raise ValueError("(0 : 0) is not a point")
        return ProjPoint(c0 / s, c1 / s)

    def value(self):
        """Affine coordinate (exact when possible), ``math.inf`` at infinity."""
        if self.is_exact():
            if self.z0 == 0:
                return math.inf
            return _simplify_scalar(self.z1 / _as_div(self.z0))
        c0, c1 = complex(self.z0), complex(self.z1)
        if c0 == 0:
            return math.inf
        return c1 / c0

    def to_complex(self):
        """Complex affine value; ``complex(inf, 0)`` at infinity."""
        v = self.value()
        if v == math.inf:
            return complex(math.inf, 0.0)
        return complex(v)

    def pair(self):
        p = self.normalized()
        return complex(p.z0), complex(p.z1)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.is_exact() and other.is_exact():
            return self.z0 * other.z1 - self.z1 * other.z0 == 0
        return chordal(self, other) < 1e-12

    def __hash__(self):
        if self.is_exact():
            n = self.normalized()
            return hash((n.z0, n.z1))
        return hash("numeric-point")

    def __repr__(self):
        v = self.value()
        return "ProjPoint(inf)" if v == math.inf else f"ProjPoint({v})"


def _as_div(x):
    # ints divide to floats in Python; go through Fraction
    return Fraction(x) if isinstance(x, int) else x


def _simplify_scalar(x):
    if isinstance(x, CycloRat):
        if x.b != 0:
            return x
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


INF = ProjPoint(0, 1)


def chordal(p, q):
    """Chordal distance on the Riemann sphere (at most 1)."""
    p = ProjPoint.of(p)
    q = ProjPoint.of(q)
    a0, a1 = complex(p.z0), complex(p.z1)
    b0, b1 = complex(q.z0), complex(q.z1)
    na = math.hypot(abs(a0), abs(a1))
    nb = math.hypot(abs(b0), abs(b1))
    return abs(a0 * b1 - a1 * b0) / (na * nb)


# ---------------------------------------------------------------------------
# numeric evaluation through a chain of stages


class _Stage:
    __slots__ = ("deg", "c0", "c1")

    def __init__(self, m):
        self.deg = m.degree
        self.c0 = [complex(c) for c in m.den.coeffs]
        self.c1 = [complex(c) for c in m.num.coeffs]


def _eval_form_d(cs, d, x0, x1):
    """``(F, dF/dx0, dF/dx1)`` up to one common positive-homogeneous factor."""
    if abs(x0) >= abs(x1):
        t = x1 / x0
        f = 0j
        g1 = 0j
        g0 = 0j
        for k in range(d, -1, -1):
            f = f * t + cs[k]
            g0 = g0 * t + (d - k) * cs[k]
            if k:
                g1 = g1 * t + k * cs[k]
        # F = x0^d f; dF/dx1 = x0^(d-1) g1; dF/dx0 = x0^(d-1) g0  (drop x0^d)
        return f, g0 / x0, g1 / x0
    s = x0 / x1
    f = 0j
    g0 = 0j
    g1 = 0j
    for k in range(d + 1):
        c = cs[k]
        f = f * s + c
        g1 = g1 * s + k * c
        if k < d:
            g0 = g0 * s + (d - k) * c
    return f, g0 / x1, g1 / x1


def _run_stages(stages, x0, x1, dx0=None, dx1=None):
    track = dx0 is not None
    for st in stages:
        f0, a00, a01 = _eval_form_d(st.c0, st.deg, x0, x1)
        f1, a10, a11 = _eval_form_d(st.c1, st.deg, x0, x1)
        if track:
            dx0, dx1 = a00 * dx0 + a01 * dx1, a10 * dx0 + a11 * dx1
        x0, x1 = f0, f1
        s = max(abs(x0), abs(x1))
        if s == 0:
            raise ZeroDivisionError("map has a common zero of its forms")
        x0 /= s
        x1 /= s
        if track:
            dx0 /= s
            dx1 /= s
    if track:
        return x0, x1, dx0, dx1
    return x0, x1


# ---------------------------------------------------------------------------
# maps


class RationalSelfMap:
    """Rational self-map ``l -> num(1, l) / den(1, l)`` of degree ``d >= 1``.

    ``factors`` optionally records a factorization into simpler maps in
    application order (first factor acts first); numeric evaluation runs
    through the factors, which avoids floating point overflow for the huge
    integer coefficients of long compositions.
    """

    __slots__ = ("den", "num", "factors", "_stages", "_hash")

    def __init__(self, den, num, factors=None, reduce=False):
        if not isinstance(den, BinaryForm):
            den = BinaryForm(den)
        if not isinstance(num, BinaryForm):
            num = BinaryForm(num)
        if den.degree != num.degree:
            raise DegreeMismatch("numerator and denominator must have equal degree")
        if den.degree < 1:
            raise ValueError("a self-map needs degree >= 1")
        if den.is_zero() or num.is_zero():
            raise ValueError("constant map")
        if reduce and den.is_integral() and num.is_integral():
            g = den.gcd(num)
            if g.degree > 0:
                den = den.divexact(g)
                num = num.divexact(g)
        self.den, self.num = normalize_forms(den, num)
        self.factors = tuple(factors) if factors else None
        self._stages = None
        self._hash = None

    @classmethod
    def from_affine(cls, num, den, reduce=True):
        """From ascending coefficient lists of ``num(l)`` and ``den(l)``."""
        d = max(len(num), len(den)) - 1
        num = list(num) + [0] * (d + 1 - len(num))
        den = list(den) + [0] * (d + 1 - len(den))
        return cls(BinaryForm(den), BinaryForm(num), reduce=reduce)

    @property
    def degree(self):
        return self.den.degree

    @property
    def stages(self):
        if self._stages is None:
            parts = self.factors or (self,)
            self._stages = [_Stage(m) for m in parts]
        return self._stages

    def is_rational(self):
        return self.den.is_rational() and self.num.is_rational()

    def __eq__(self, other):
        if not isinstance(other, RationalSelfMap):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den.coeffs, self.num.coeffs))
        return self._hash

    def __repr__(self):
        return f"RationalSelfMap(degree={self.degree}, den={list(self.den.coeffs)}, num={list(self.num.coeffs)})"

    def apply_point(self, p):
        p = ProjPoint.of(p)
        if p.is_exact() and self.is_exact():
            w0 = self.den(p.z0, p.z1)
            w1 = self.num(p.z0, p.z1)
            if w0 == 0 and w1 == 0:
                raise ZeroDivisionError("forms have a common zero")
            return ProjPoint(w0, w1).normalized()
        x0, x1 = p.pair()
        x0, x1 = _run_stages(self.stages, x0, x1)
        return ProjPoint(x0, x1)

    def __call__(self, x):
        """Apply to an affine value (or ``math.inf``); exact inputs give exact outputs."""
        if isinstance(x, ProjPoint):
            return self.apply_point(x)
        return self.apply_point(ProjPoint.of(x)).value()

    def is_exact(self):
        # coefficients are always exact; kept for symmetry with ProjPoint
        return True


def identity():
    return RationalSelfMap(BinaryForm((1, 0)), BinaryForm((0, 1)))


def _stage_list(m):
    return m.factors or (m,)


def compose(f, g):
    """``f o g`` (``g`` acts first); degree ``deg f * deg g``."""
    den, num = substitute_forms([f.den, f.num], g.den, g.num)
    return RationalSelfMap(den, num, factors=_stage_list(g) + _stage_list(f))


def iterate(f, n):
    if n < 1:
        raise ValueError("iterate needs n >= 1")
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out


# ---------------------------------------------------------------------------
# fixed points and critical points


def fixed_point_form(f):
    """``l0*F1 - l1*F0`` (degree ``d+1``), normalized."""
    d = f.degree
    cs = [0] * (d + 2)
    for k, c in enumerate(f.num.coeffs):
        cs[k] += c
    for k, c in enumerate(f.den.coeffs):
        cs[k + 1] -= c
    form = BinaryForm(cs)
    if form.is_zero():
        raise ValueError("the identity map has no isolated fixed points")
    return form.normalized()


def ramification_form(f):
    """Jacobian determinant of ``(F0, F1)``: degree ``2d - 2``, roots are the critical points."""
    if f.degree < 2:
        raise ValueError("ramification form needs degree >= 2")
    w = f.den.d0() * f.num.d1() - f.den.d1() * f.num.d0()
    return w.normalized()


# ---------------------------------------------------------------------------
# local data


def _use_u_chart(p):
    if p.is_exact():
        return p.z0 == 0
    c0, c1 = complex(p.z0), complex(p.z1)
    return abs(c1) > abs(c0)


def chart_derivative(f, p, target=None):
    """Derivative of ``f`` at ``p`` between standard charts.

    The chart at a point is the affine coordinate ``l`` when ``|l| <= 1`` and
    ``u = 1/l`` otherwise; using the same rule at every point makes products
    along a cycle telescope to the chart-independent multiplier.
    """
    p = ProjPoint.of(p).normalized()
    src_u = _use_u_chart(p)
    x0, x1 = p.pair()
    if src_u:
        # e(t) = (t, 1) with t = u
        dx0, dx1 = 1 + 0j, 0j
    else:
        dx0, dx1 = 0j, 1 + 0j
    w0, w1, d0, d1 = _run_stages(f.stages, x0, x1, dx0, dx1)
    # the tangent was taken at the unnormalized representative; rescale to the chart
    scale = x1 if src_u else x0
    tgt = ProjPoint(w0, w1) if target is None else ProjPoint.of(target)
    if _use_u_chart(tgt.normalized()):
        return (d0 * w1 - w0 * d1) / (w1 * w1) * scale
    return (d1 * w0 - w1 * d0) / (w0 * w0) * scale


def multiplier_at(f, p):
    """Multiplier of the fixed point ``p`` (complex, chart-independent)."""
    p = ProjPoint.of(p)
    q = f.apply_point(p)
    if chordal(p, q) > FIXPOINT_TOL:
        raise NotFixedError(f"{p!r} is not fixed (image {q!r})")
    return complex(chart_derivative(f, p, p))


def cycle_multiplier(f, orbit):
    """Product of chart derivatives along a cycle ``orbit[0] -> orbit[1] -> ...``."""
    m = 1 + 0j
    n = len(orbit)
    for i, z in enumerate(orbit):
        m *= chart_derivative(f, z, orbit[(i + 1) % n])
    return m


@dataclass
class TaylorData:
    """Local expansion ``f(t) = a t + b t^h + ...`` at a fixpoint."""

    fixpoint: ProjPoint
    a: object
    h: Optional[int] = None
    b: object = None
    chart: str = "l"
    series: tuple = ()


def _taylor_shift(cs, p):
    """Coefficients of ``sum c_k (p + t)^k`` (ascending)."""
    out = list(cs)
    n = len(out)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + p * out[k + 1]
    return out


def _series_div(a, b, n):
    """First ``n`` coefficients of ``a / b`` with ``b[0] != 0``."""
    a = list(a[:n]) + [0] * max(0, n - len(a))
    b = list(b[:n]) + [0] * max(0, n - len(b))
    inv0 = _inv(b[0])
    out = []
    for k in range(n):
        s = a[k]
        for j in range(1, k + 1):
            if b[j]:
                s = s - b[j] * out[k - j]
        out.append(_simplify_scalar(s * inv0) if is_exact_scalar(s) else s * inv0)
    return out


def _inv(x):
    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, (Fraction, CycloRat)):
        return 1 / x
    return 1 / complex(x)


def _local_series(f, p, n):
    """Coefficients of ``f`` in the chart at the fixed point ``p`` (``n`` terms)."""
    p = ProjPoint.of(p).normalized()
    exact = p.is_exact()
    den = list(f.den.coeffs)
    num = list(f.num.coeffs)
    if not exact:
        den = [complex(c) for c in den]
        num = [complex(c) for c in num]
    if p.is_inf() if exact else _use_u_chart(p):
        if exact:
            # u = 1/l: F(u, 1) reverses the coefficient list; target u' = W0/W1
            return _series_div(den[::-1], num[::-1], n), "u"
        u0 = complex(p.z0) / complex(p.z1)
        # l = 1/(u0 + t): evaluate F(u0 + t, 1) = sum c_k (u0+t)^(d-k)
        a = _taylor_shift(den[::-1], u0)
        b = _taylor_shift(num[::-1], u0)
        s = _series_div(a, b, n)
        s[0] -= u0
        return s, "u"
    x = p.value()
    a = _taylor_shift(num, x)
    b = _taylor_shift(den, x)
    s = _series_div(a, b, n)
    s[0] = _simplify_scalar(s[0] - x) if exact else s[0] - x
    return s, "l"


def taylor_at_fixpoint(f, p, max_order=64):
    """Linear coefficient ``a`` and first nonlinear term ``b t^h`` at a fixpoint.

    With an exact point the coefficients are exact and vanishing is exact;
    otherwise a coefficient counts as zero below ``1e-10``.
    """
    p = ProjPoint.of(p)
    q = f.apply_point(p)
    if chordal(p, q) > FIXPOINT_TOL:
        raise NotFixedError(f"{p!r} is not fixed")
    s, chart = _local_series(f, p, max_order + 1)
    exact = p.is_exact()

    def nonzero(c):
        return c != 0 if exact else abs(c) > SUPERATTRACTING_TOL

    a = s[1] if len(s) > 1 else 0
    h = b = None
    for k in range(2, len(s)):
        if nonzero(s[k]):
            h, b = k, s[k]
            break
    if not nonzero(a) and h is None:
        raise ConvergenceError(f"all coefficients vanish up to order {max_order}")
    if not nonzero(a) and not exact:
        a = 0j
    return TaylorData(p.normalized(), a, h, b, chart, tuple(s))


# ---------------------------------------------------------------------------
# real degree


def _real_roots_numeric(cs):
    """Real roots of a real polynomial (ascending coefficients) by companion eigenvalues."""
    cs = upoly.strip([int(c) for c in cs])
    if len(cs) < 2:
        return []
    scale = max(abs(c) for c in cs)
    r = np.roots([c / scale for c in reversed(cs)])
    out = []
    for z in r:
        if abs(z.imag) <= 1e-7 * (1 + abs(z)):
            out.append(float(z.real))
    return sorted(out)


def _regular_values():
    k = 1
    while True:
        yield Fraction(k, 2 * k + 1)
        k += 1


def _affine_derivative(f, x):
    x = complex(x)
    nd = [complex(c) for c in f.num.coeffs]
    dd = [complex(c) for c in f.den.coeffs]
    n = np.polyval(nd[::-1], x)
    d = np.polyval(dd[::-1], x)
    n1 = np.polyval(np.polyder(nd[::-1]), x) if len(nd) > 1 else 0
    d1 = np.polyval(np.polyder(dd[::-1]), x) if len(dd) > 1 else 0
    return (n1 * d - n * d1) / (d * d)


def _integer_map(f):
    if not (f.den.is_integral() and f.num.is_integral()):
        raise TypeError("real degree needs a map with rational coefficients")


def real_degree(f, max_tries=50):
    """Signed count of real preimages of a regular real value."""
    _integer_map(f)
    crit = [z for z in ramification_form(f).numeric_roots()] if f.degree >= 2 else []
    for y in islice(_regular_values(), max_tries):
        form = f.num * y.denominator - f.den * y.numerator
        form = BinaryForm([int(c) for c in form.coeffs])
        if form.is_zero() or form.order_at_infinity() > 0:
            continue
        cs = list(form.coeffs)
        sq = upoly.squarefree_part(cs)
        if len(sq) != len(upoly.strip(cs)):
            continue
        roots = _real_roots_numeric(cs)
        if len(roots) != upoly.count_real_roots(cs):
            continue
        if any(abs(x - c) < 1e-8 for x in roots for c in crit if not cmath.isinf(c)):
            continue
        total = 0
        ok = True
        for x in roots:
            dv = _affine_derivative(f, x).real
            if abs(dv) < 1e-12:
                ok = False
                break
            total += 1 if dv > 0 else -1
        if ok:
            return total
    raise ConvergenceError("no regular value found")


def signed_real_fixpoint_count(f):
    """Sum over real fixpoints of the signed multiplicity (sign of ``a - 1`` etc.)."""
    _integer_map(f)
    phi = fixed_point_form(f)
    points = []
    if phi.order_at_infinity() > 0:
        points.append(INF)
    affine = upoly.strip(phi.coeffs)
    sq = upoly.squarefree_part(affine)
    roots = _real_roots_numeric(sq)
    if len(roots) != upoly.count_real_roots(sq):
        raise ConvergenceError("numeric real fixpoints disagree with the Sturm count")
    points.extend(ProjPoint.of(complex(x)) for x in roots)
    total = 0
    for p in points:
        td = taylor_at_fixpoint(f, p)
        a = complex(td.a)
        if abs(a - 1) > FIXPOINT_TOL:
            total += 1 if a.real > 1 else -1
            continue
        if td.h is None:
            raise ConvergenceError("indifferent fixpoint with vanishing higher terms")
        if td.h % 2 == 0:
            continue
        total += 1 if complex(td.b).real > 0 else -1
    return total
