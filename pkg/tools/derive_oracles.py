"""Recompute reference values with sympy and write tests/oracle_values.json.

Independent of the package: maps are built from their affine formulas and
composed symbolically.  Run from the repository root:

    python tools/derive_oracles.py
"""

import json
from fractions import Fraction
from pathlib import Path

import sympy as sp

L, U = sp.symbols("l u")
H = -(1 + 2 * L**3) / (6 * L**2)
C = (1 - 4 * L**3) / (6 * L)
MAPS = {"h": H, "c": C}


def word_map(w):
    f = L
    for ch in reversed(w):
        f = sp.cancel(MAPS[ch].subs(L, f))
    return f


def fixed_form(f):
    """num - l*den (affine), plus 1 if infinity is fixed."""
    n, d = sp.fraction(sp.cancel(f))
    p = sp.Poly(sp.expand(n - L * d), L)
    deg = max(sp.Poly(n, L).degree(), sp.Poly(d, L).degree())
    return p, deg + 1 - p.degree()


def real_projective_fixpoints(f):
    p, at_inf = fixed_form(f)
    return int(sp.Poly(sp.sqf_part(p.as_expr()), L).count_roots()) + (1 if at_inf else 0)


def _local_series(f, n):
    """Coefficients of 1/f(1/u) in u up to u^n, as Fractions."""
    ser = sp.series(sp.cancel(1 / f.subs(L, 1 / U)), U, 0, n + 1).removeO()
    p = sp.Poly(ser, U)
    return [Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in
            (p.coeff_monomial(U**k) for k in range(n + 1))]


def _mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[:n + 1 - i]):
                out[i + j] += x * y
    return out


def _compose(outer, inner, n):
    """outer(inner(u)) truncated at u^n (inner has no constant term)."""
    res = [Fraction(0)] * (n + 1)
    pw = [Fraction(1)] + [Fraction(0)] * n
    for c in outer:
        if c:
            res = [r + c * q for r, q in zip(res, pw)]
        pw = _mul(pw, inner, n)
        if not any(pw):
            break
    return res


def leading_at_infinity(w):
    """Compose truncated power series in the chart u = 1/l, rightmost letter first."""
    n = 2 ** w.count("c") + 2
    local = {k: _local_series(f, n) for k, f in MAPS.items()}
    s = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    for ch in reversed(w):
        s = _compose(local[ch], s, n)
    o = next(k for k, c in enumerate(s) if c)
    return o, s[o]


def main():
    out = {}
    # fixpoints of the Cayleyan and their multipliers
    fx = sp.solve(sp.Eq(C, L), L)
    cd = sp.diff(C, L)
    out["cayleyan_fixpoints"] = sorted([[float(x), float(sp.N(cd.subs(L, x), 30))] for x in fx])
    out["cayleyan_fixpoint_poly"] = [int(c) for c in sp.Poly(sp.numer(sp.together(C - L)), L).all_coeffs()]
    # real fixpoint counts of iterates
    out["real_fixpoints_c"] = [real_projective_fixpoints(word_map("c" * n)) for n in (1, 2, 3)]
    out["real_fixpoints_h"] = [real_projective_fixpoints(word_map("h" * n)) for n in (2, 4)]
    # leading behaviour at infinity
    words = ["h", "c", "cc", "hc", "ch", "chc", "chchhc", "hhccch", "ccc"]
    out["leading"] = {w: [o, str(a)] for w, (o, a) in
                      ((w, leading_at_infinity(w)) for w in words)}
    # harmonic set
    harm = sp.Poly(8 * L**6 + 20 * L**3 - 1, L).nroots(n=30)
    out["harmonic"] = sorted([[float(sp.re(z)), float(sp.im(z))] for z in harm])
    # period-2 cycle multipliers of the Cayleyan (minimal period 2)
    f2 = word_map("cc")
    p2, _ = fixed_form(f2)
    p1, _ = fixed_form(C)
    q, r = sp.div(p2, sp.Poly(sp.sqf_part(p1.as_expr()), L))
    assert r.is_zero
    d2 = sp.diff(f2, L)
    mults = []
    for z in sp.Poly(q, L).nroots(n=30):
        mults.append([float(sp.re(z)), float(sp.im(z)), float(abs(sp.N(d2.subs(L, z), 30)))])
    out["cayleyan_period2"] = sorted(mults)
    # degree of words
    out["word_degrees"] = {w: int(max(sp.degree(x, L) for x in sp.fraction(word_map(w)))) for w in ["hc", "chc"]}
    Path("tests/oracle_values.json").write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
