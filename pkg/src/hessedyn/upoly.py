"""Dense univariate polynomials over the integers.

A polynomial is a list of coefficients in ascending order of degree,
``[a0, a1, ..., an]``, with no trailing zeros (the zero polynomial is
``[]``).  The remainder-sequence routines work on ``gmpy2.mpz`` internally
because Sturm chains of the period forms carry coefficients with hundreds
of thousands of bits.
"""

from fractions import Fraction
from math import gcd

import gmpy2
from gmpy2 import mpz

from .errors import check_budget

__all__ = [
    "strip", "degree", "derivative", "content", "primitive", "divexact",
    "poly_gcd", "squarefree_part", "sign_at", "SturmChain", "sturm_chain",
    "count_real_roots", "mul", "add", "sub",
]


def strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return strip(out)


def sub(a, b):
    return add(a, [-x for x in b])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def derivative(p):
    return [k * p[k] for k in range(1, len(p))]


def content(p):
    g = 0
    for x in p:
        g = gcd(g, int(x))
        if g == 1:
            break
    return g


def primitive(p):
    """Divide by the positive content; the sign is kept."""
    g = content(p)
    if g <= 1:
        return list(p)
    return [x // g for x in p]


def _primitive_mpz(p):
    g = mpz(0)
    for x in p:
        g = gmpy2.gcd(g, x)
        if g == 1:
            return p
    if g == 0:
        return p
    return [x // g for x in p]


def divexact(a, b):
    """Exact quotient ``a / b`` in Z[x]; raises ``ValueError`` otherwise."""
    a = strip(a)
    b = strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        if a:
            raise ValueError("division is not exact")
        return []
    rem = list(a)
    lb = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for s in range(len(q) - 1, -1, -1):
        top = rem[s + len(b) - 1]
        if top % lb:
            raise ValueError("division is not exact")
        c = top // lb
        q[s] = c
        if c:
            for i, y in enumerate(b):
                rem[s + i] -= c * y
    if any(rem):
        raise ValueError("division is not exact")
    return q


def _neg_prem(a, b):
    """``-(|lc(b)|^k * a mod b)`` with ``k = deg a - deg b + 1``.

    Multiplying by a power of ``|lc(b)|`` keeps the sign of the Euclidean
    remainder, which is what a Sturm sequence needs.
    """
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    alb = abs(lb)
    steps = len(a) - len(b) + 1
    while a and len(a) - 1 >= db:
        la = a[-1]
        s = len(a) - 1 - db
        if lb > 0:
            a = [lb * x for x in a]
            q = la
        else:
            a = [alb * x for x in a]
            q = -la
        for i in range(db + 1):
            a[s + i] -= q * b[i]
        a.pop()
        steps -= 1
        while a and a[-1] == 0:
            a.pop()
    if steps > 0 and a:
        f = alb ** steps
        a = [f * x for x in a]
    return [-x for x in a]


def _prs(a, b):
    """Primitive signed remainder sequence starting ``a, b``."""
    seq = [_primitive_mpz([mpz(x) for x in a]), _primitive_mpz([mpz(x) for x in b])]
    while len(seq[-1]) > 1:
        check_budget()
        r = _neg_prem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_primitive_mpz(r))
    return seq


def poly_gcd(a, b):
    """Greatest common divisor in Z[x], with positive leading coefficient."""
    a = strip(a)
    b = strip(b)
    if not a:
        return primitive_sign(b) if b else []
    if not b:
        return primitive_sign(a)
    c = gcd(content(a), content(b))
    if len(a) < len(b):
        a, b = b, a
    last = _prs(a, b)[-1]
    if len(last) == 1:
        return [c]
    g = [int(x) for x in last]
    if g[-1] < 0:
        g = [-x for x in g]
    return [c * x for x in g]


def primitive_sign(p):
    p = primitive(p)
    if p and p[-1] < 0:
        p = [-x for x in p]
    return p


def squarefree_part(p):
    """``p / gcd(p, p')``, primitive with positive leading coefficient."""
    p = strip(p)
    if len(p) <= 2:
        return primitive_sign(p)
    g = poly_gcd(p, derivative(p))
    if len(g) == 1:
        return primitive_sign(p)
    return primitive_sign(divexact(primitive(p), primitive_sign(g)))


def sign_at(p, x):
    """Exact sign of ``p(x)`` for rational ``x``."""
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    # homogeneous Horner for d^k * p(n/d); d > 0 so the sign is unchanged
    k = len(p) - 1
    acc = 0
    dpow = 1
    for i in range(k, -1, -1):
        acc = acc * n + int(p[i]) * dpow
        dpow *= d
    return (acc > 0) - (acc < 0)


def _variations(signs):
    s = [x for x in signs if x]
    return sum(1 for i in range(len(s) - 1) if s[i] != s[i + 1])


class SturmChain:
    """Sturm sequence of a squarefree integer polynomial.

    ``polys[0]`` is the polynomial itself, ``polys[1]`` its derivative and
    the rest are negated pseudo-remainders scaled by positive constants.
    """

    def __init__(self, polys):
        self.polys = polys

    def __len__(self):
        return len(self.polys)

    def variations_at(self, x):
        if x == float("inf"):
            return _variations([1 if p[-1] > 0 else -1 for p in self.polys])
        if x == float("-inf"):
            return _variations(
                [(1 if p[-1] > 0 else -1) * (-1) ** (len(p) - 1) for p in self.polys])
        return _variations([sign_at(p, x) for p in self.polys])

    def count(self, a=float("-inf"), b=float("inf")):
        """Distinct real roots in the half-open interval ``(a, b]``."""
        return self.variations_at(a) - self.variations_at(b)


def sturm_chain(p):
    """Sturm chain of the squarefree part of ``p``."""
    p = strip(p)
    if not p:
        raise ValueError("zero polynomial has no Sturm chain")
    if len(p) == 1:
        return SturmChain([[mpz(p[0])]])
    seq = _prs(p, derivative(p))
    if len(seq[-1]) > 1:
        # p had repeated roots; restart on the squarefree part
        seq = _prs(squarefree_part(p), derivative(squarefree_part(p)))
    return SturmChain(seq)


def count_real_roots(p):
    """Number of distinct real roots of an integer polynomial."""
    return sturm_chain(p).count()
