from hypothesis import given, strategies as st

from hessedyn import upoly

roots = st.lists(st.integers(-30, 30), min_size=1, max_size=8)


def _from_roots(rs, extra_quadratics=0):
    p = [1]
    for r in rs:
        p = upoly.mul(p, [-r, 1])
    for _ in range(extra_quadratics):
        p = upoly.mul(p, [1, 0, 1])  # x^2 + 1: no real roots
    return p


@given(roots, st.integers(0, 3))
def test_sturm_counts_distinct_real_roots(rs, q):
    assert upoly.count_real_roots(_from_roots(rs, q)) == len(set(rs))


@given(roots)
def test_sturm_interval_counts(rs):
    chain = upoly.sturm_chain(_from_roots(rs))
    assert chain.count(0, 30) == len({r for r in rs if 0 < r <= 30})


@given(roots)
def test_squarefree_part_degree(rs):
    assert upoly.degree(upoly.squarefree_part(_from_roots(rs))) == len(set(rs))


@given(roots, roots)
def test_gcd_of_products(a, b):
    g = upoly.poly_gcd(_from_roots(a), _from_roots(b))
    common = len(set(a) & set(b))
    assert upoly.degree(g) >= common
    assert upoly.count_real_roots(g) == common


def test_large_degree_chain():
    # Chebyshev-like polynomial with 60 distinct real roots
    p = _from_roots(list(range(-30, 30)))
    assert upoly.count_real_roots(p) == 60
