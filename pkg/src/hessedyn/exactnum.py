"""Exact scalars and binary forms.

Three scalar domains are used: Python ``int``, ``fractions.Fraction`` and
:class:`CycloRat`, the field Q(eps) with eps a primitive cube root of
unity.  :class:`SNumber` is the exact arithmetic of the set
``{(alpha/beta) * 2**(b/3)}`` closed under the involution and the Hessian.
:class:`BinaryForm` is a homogeneous polynomial in ``(l0, l1)``.
"""

import math
from fractions import Fraction

from .errors import DegreeMismatch

BigRat = Fraction

__all__ = [
    "BigRat", "CycloRat", "EPS", "SNumber", "snum_iota", "snum_hessian",
    "BinaryForm", "normalize_forms", "to_complex",
]

_EPS_COMPLEX = complex(-0.5, math.sqrt(3) / 2)


class CycloRat:
    """``a + b*eps`` with ``a, b`` rational and ``eps**2 = -1 - eps``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _lift(x):
        if isinstance(x, CycloRat):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloRat(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return CycloRat(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycloRat(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return CycloRat(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return CycloRat(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conj(self):
        """Image under ``eps -> eps**2``."""
        return CycloRat(self.a - self.b, -self.b)

    def norm(self):
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("CycloRat division by zero")
        c = self.conj()
        return CycloRat(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloRat(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        return complex(self.a) + complex(self.b) * _EPS_COMPLEX

    def is_rational(self):
        return self.b == 0

    def __repr__(self):
        return f"CycloRat({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*eps"
        return f"({self.a} + {self.b}*eps)"


EPS = CycloRat(0, 1)


def to_complex(x):
    return complex(x)


def _simplify(x):
    """Collapse a scalar to the smallest domain that holds it exactly."""
    if isinstance(x, CycloRat):
        if x.b != 0:
            return x
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


# ---------------------------------------------------------------------------
# S-numbers


def _two_adic(q):
    """Split a nonzero rational as ``(odd/odd, v)`` with ``q = odd/odd * 2**v``."""
    n, d = q.numerator, q.denominator
    vn = (n & -n).bit_length() - 1
    vd = (d & -d).bit_length() - 1
    return Fraction(n >> vn, d >> vd), vn - vd


class SNumber:
    """Exact element of ``S | {0, inf}``.

    A finite element is ``(alpha/beta) * 2**(b/3)`` with ``alpha``, ``beta``
    odd and coprime, ``beta > 0`` and ``b`` not divisible by 3.
    """

    __slots__ = ("kind", "alpha", "beta", "b")

    def __init__(self, kind, alpha=0, beta=1, b=0):
        self.kind = kind
        self.alpha = alpha
        self.beta = beta
        self.b = b
        if kind == "finite":
            if alpha % 2 == 0 or beta % 2 == 0 or beta <= 0 or math.gcd(alpha, beta) != 1:
                raise ValueError("alpha, beta must be odd, coprime, beta > 0")
            if b % 3 == 0:
                raise ValueError("exponent b must not be divisible by 3")
        elif kind not in ("zero", "inf"):
            raise ValueError(f"unknown SNumber kind {kind!r}")

    @classmethod
    def finite(cls, q, b):
        """Canonical form of ``q * 2**(b/3)`` for nonzero rational ``q``."""
        q = Fraction(q)
        if q == 0:
            return ZERO
        odd, v = _two_adic(q)
        b = b + 3 * v
        # a multiple of 3 here means the value is rational: not in S
        assert b % 3 != 0, "value lies outside S"
        return cls("finite", odd.numerator, odd.denominator, b)

    @property
    def q(self):
        return Fraction(self.alpha, self.beta)

    def is_finite(self):
        return self.kind == "finite"

    def __float__(self):
        if self.kind == "zero":
            return 0.0
        if self.kind == "inf":
            return math.inf
        return self.alpha / self.beta * 2.0 ** (self.b / 3)

    def __eq__(self, other):
        if not isinstance(other, SNumber):
            return NotImplemented
        return (self.kind, self.alpha, self.beta, self.b) == (
            other.kind, other.alpha, other.beta, other.b)

    def __hash__(self):
        return hash((self.kind, self.alpha, self.beta, self.b))

    def __repr__(self):
        if self.kind != "finite":
            return f"SNumber({self.kind!r})"
        return f"SNumber({self.alpha}/{self.beta} * 2^({self.b}/3))"


ZERO = SNumber("zero")
INF = SNumber("inf")
SNumber.ZERO = ZERO
SNumber.INF = INF


def snum_iota(s):
    """Image under ``l -> -1/(2l)``."""
    if s.kind == "zero":
        return INF
    if s.kind == "inf":
        return ZERO
    # -1/(2 q 2^(b/3)) = -(1/q) * 2^((-3-b)/3)
    return SNumber.finite(-1 / s.q, -3 - s.b)


def snum_hessian(s):
    """Image under ``l -> -(1 + 2 l^3) / (6 l^2)``."""
    if s.kind != "finite":
        return INF
    q, b = s.q, s.b
    # -(1 + q^3 2^(b+1)) / (6 q^2) * 2^(-2b/3); b+1 may be negative
    r = -(1 + q ** 3 * Fraction(2) ** (b + 1)) / (6 * q * q)
    if r == 0:
        return ZERO
    return SNumber.finite(r, -2 * b)


# ---------------------------------------------------------------------------
# binary forms

_KRONECKER_MIN = 24


def _bias(k, n):
    # sum_i 2^(k-1) * 2^(k i): shifts balanced digits into [0, 2^k)
    return int.from_bytes((1 << (k - 1)).to_bytes(k // 8, "little") * n, "little")


def _pack(coeffs, k):
    """``sum c_i 2^(k i)`` for coefficients with ``|c_i| < 2^(k-1)``; ``k`` is a multiple of 8."""
    nb = k // 8
    half = 1 << (k - 1)
    raw = b"".join((c + half).to_bytes(nb, "little") for c in coeffs)
    return int.from_bytes(raw, "little") - _bias(k, len(coeffs))


def _unpack(v, k, n):
    nb = k // 8
    half = 1 << (k - 1)
    raw = (v + _bias(k, n)).to_bytes(n * nb, "little")
    return [int.from_bytes(raw[i:i + nb], "little") - half for i in range(0, n * nb, nb)]


def _mul_int(a, b):
    """Product of integer coefficient lists (Kronecker substitution when large)."""
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * (len(a) + len(b) - 1)
    k = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    k = (k + 7) // 8 * 8
    return _unpack(_pack(a, k) * _pack(b, k), k, len(a) + len(b) - 1)


def _mul_generic(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def _all_int(cs):
    return all(type(c) is int for c in cs)


class BinaryForm:
    """Homogeneous polynomial ``sum_k c[k] * l0**(d-k) * l1**k``.

    Dehomogenizing at ``l0 = 1`` gives the affine polynomial with the same
    coefficient list in ascending powers of ``l = l1/l0``; a root at
    infinity, the point ``(0:1)``, shows up as ``c[d] == 0``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(_simplify(c) if not isinstance(c, int) else c for c in coeffs)
        if not cs:
            raise ValueError("a binary form needs at least one coefficient")
        self.coeffs = cs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, d):
        return cls((0,) * (d + 1))

    @classmethod
    def monomial(cls, d, k, c=1):
        cs = [0] * (d + 1)
        cs[k] = c
        return cls(cs)

    def is_zero(self):
        return not any(self.coeffs)

    def is_integral(self):
        return _all_int(self.coeffs)

    def is_rational(self):
        return not any(isinstance(c, CycloRat) for c in self.coeffs)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add forms of degree {self.degree} and {other.degree}")
        return BinaryForm(x + y for x, y in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot subtract forms of degree {self.degree} and {other.degree}")
        return BinaryForm(x - y for x, y in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return BinaryForm(-x for x in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            a, b = self.coeffs, other.coeffs
            if _all_int(a) and _all_int(b):
                return BinaryForm(_mul_int(a, b))
            return BinaryForm(_mul_generic(a, b))
        if isinstance(other, (int, Fraction, CycloRat)):
            return BinaryForm(other * x for x in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        out = BinaryForm((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BinaryForm({list(self.coeffs)!r})"

    # calculus -------------------------------------------------------------

    def d0(self):
        """Partial derivative with respect to ``l0``."""
        d = self.degree
        if d == 0:
            return BinaryForm((0,))
        return BinaryForm((d - k) * self.coeffs[k] for k in range(d))

    def d1(self):
        """Partial derivative with respect to ``l1``."""
        d = self.degree
        if d == 0:
            return BinaryForm((0,))
        return BinaryForm(k * self.coeffs[k] for k in range(1, d + 1))

    # normalization ----------------------------------------------------------

    def content(self):
        if not self.is_integral():
            raise TypeError("content is defined for integer forms")
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self):
        g = self.content()
        if g <= 1:
            return self
        return BinaryForm(c // g for c in self.coeffs)

    def normalized(self):
        return normalize_forms(self)[0]

    # evaluation and substitution ------------------------------------------

    def __call__(self, z0, z1):
        acc = 0
        d = self.degree
        # homogeneous Horner: sum c_k z0^(d-k) z1^k
        p0 = 1
        for k in range(d, -1, -1):
            acc = acc * z1 + self.coeffs[k] * p0
            p0 = p0 * z0
        return acc

    def substitute(self, g0, g1):
        """``F(G0, G1)``: degree ``deg F * deg G``."""
        return substitute_forms([self], g0, g1)[0]

    def affine(self):
        """Coefficients of ``F(1, l)`` in ascending order, trailing zeros kept."""
        return list(self.coeffs)

    def order_at_infinity(self):
        """Multiplicity of the root ``(0:1)``."""
        m = 0
        for c in reversed(self.coeffs):
            if c:
                break
            m += 1
        return m

    def order_at_zero(self):
        m = 0
        for c in self.coeffs:
            if c:
                break
            m += 1
        return m

    def gcd(self, other):
        """Greatest common divisor of two integer forms (primitive, sign-normalized)."""
        from . import upoly
        if not (self.is_integral() and other.is_integral()):
            raise TypeError("gcd is implemented for integer forms")
        m = min(self.order_at_infinity(), other.order_at_infinity())
        g = upoly.poly_gcd(upoly.strip(self.coeffs), upoly.strip(other.coeffs))
        if not g:
            return self.normalized()
        cs = list(g) + [0] * m
        return BinaryForm(cs).normalized()

    def divexact(self, other):
        from . import upoly
        q = upoly.divexact(upoly.strip(self.coeffs), upoly.strip(other.coeffs))
        d = self.degree - other.degree
        return BinaryForm(q + [0] * (d + 1 - len(q)))

    def numeric_roots(self):
        """Projective roots as complex numbers (``inf`` for ``(0:1)``), with multiplicity."""
        import numpy as np
        m = self.order_at_infinity()
        cs = [complex(c) for c in self.coeffs[: len(self.coeffs) - m]]
        roots = []
        if len(cs) > 1:
            scale = max(abs(c) for c in cs)
            roots = list(np.roots([c / scale for c in reversed(cs)]))
        return [complex(r) for r in roots] + [complex(math.inf, 0)] * m


def substitute_forms(forms, g0, g1):
    """Substitute ``(G0, G1)`` into each form, sharing the power tables."""
    if g0.degree != g1.degree:
        raise DegreeMismatch("substituted pair must have equal degrees")
    d = max(f.degree for f in forms)
    p0 = [BinaryForm((1,))]
    p1 = [BinaryForm((1,))]
    for _ in range(d):
        p0.append(p0[-1] * g0)
        p1.append(p1[-1] * g1)
    out = []
    e = g0.degree
    for f in forms:
        fd = f.degree
        acc = None
        for k, c in enumerate(f.coeffs):
            if not c:
                continue
            term = (p0[fd - k] * p1[k]) * c
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else BinaryForm.zero(fd * e))
    return out


def normalize_forms(*forms):
    """Jointly normalize forms so proportional tuples compare equal.

    Rational tuples are scaled to integers with content 1 and a positive
    first nonzero coefficient (scanning the forms in order).  Tuples with
    genuinely cyclotomic coefficients are scaled so that the first nonzero
    coefficient is 1; if that leaves everything rational they are
    re-normalized as integer tuples.
    """
    flat = [c for f in forms for c in f.coeffs]
    first = next((c for c in flat if c), None)
    if first is None:
        return forms
    if any(isinstance(c, CycloRat) and c.b != 0 for c in flat):
        inv = CycloRat._lift(first).inverse()
        scaled = [tuple(_simplify(CycloRat._lift(c) * inv) for c in f.coeffs) for f in forms]
        if any(isinstance(c, CycloRat) for cs in scaled for c in cs):
            return tuple(BinaryForm(cs) for cs in scaled)
        forms = tuple(BinaryForm(cs) for cs in scaled)
        flat = [c for f in forms for c in f.coeffs]
        first = next(c for c in flat if c)
    if not _all_int(flat):
        lcm = 1
        for c in flat:
            den = Fraction(c).denominator
            lcm = lcm * den // math.gcd(lcm, den)
        forms = tuple(BinaryForm(int(Fraction(c) * lcm) for c in f.coeffs) for f in forms)
        flat = [c for f in forms for c in f.coeffs]
        first = next(c for c in flat if c)
    g = 0
    for c in flat:
        g = math.gcd(g, c)
    if first < 0:
        g = -g
    if g == 1:
        return tuple(forms)
    return tuple(BinaryForm(c // g for c in f.coeffs) for f in forms)


def eps_power(k):
    """``eps**k`` as a CycloRat."""
    k %= 3
    return (CycloRat(1), EPS, CycloRat(-1, -1))[k]


def cyclo_from_complex(z, den=1):
    """Nearest element ``(m + n*eps)/den`` with integers ``m, n``."""
    w = complex(z) * den
    n = round(w.imag * 2 / math.sqrt(3))
    m = round(w.real + n / 2)
    return _simplify(CycloRat(Fraction(m, den), Fraction(n, den)))

