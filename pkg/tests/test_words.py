from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hessedyn.errors import ResourceBoundError
from hessedyn.ratmap import compose
from hessedyn.words import (Word, WordHI, all_hi_words, all_words, collision_scan, ends_with_h,
                            from_hi, map_digest, measured_leading, normal_form, predicted_leading,
                            psi, psi_hi, s_trajectory, to_hi)

words = st.text(alphabet="hc", min_size=1, max_size=3)
longer = st.text(alphabet="hc", min_size=1, max_size=12)


def test_word_validation():
    with pytest.raises(ValueError):
        Word("")
    with pytest.raises(ValueError):
        Word("hx")
    with pytest.raises(ValueError):
        WordHI("hii")


@given(words, words)
def test_psi_is_a_homomorphism(u, v):
    assert psi(u + v) == compose(psi(u), psi(v))


@given(words)
def test_degree(w):
    assert psi(w).degree == 3 ** len(w)


@given(longer)
def test_hi_roundtrip(w):
    assert from_hi(to_hi(w)) == w


@given(words)
def test_hi_spelling_gives_the_same_map(w):
    assert psi_hi(to_hi(w)) == psi(w)


@given(longer)
def test_normal_form_roundtrip(w):
    nf = normal_form(w)
    assert nf.word() == w
    assert len(nf.exponents) == Word(w).ec + 1


def test_enumeration_counts():
    assert sum(1 for _ in all_words(5)) == 62
    assert sum(1 for _ in all_words(6)) == 126
    assert all(w[0] == "h" and "ii" not in w for w in all_hi_words(6))


def test_leading_law_against_oracle(oracle):
    for w, (order, coeff) in oracle["leading"].items():
        assert measured_leading(w) == (order, Fraction(coeff))
        assert predicted_leading(w) == (order, abs(Fraction(coeff)))


def test_designated_pair():
    a, b = "chchhc", "hhccch"
    assert predicted_leading(a) == predicted_leading(b)
    assert predicted_leading(a)[1] == Fraction(3, 2) ** 7 * 3 ** 10
    assert psi(a) != psi(b)
    assert map_digest(psi(a)) != map_digest(psi(b))


@given(longer)
def test_ends_with_h_detector(w):
    assert ends_with_h(w) == (w[-1] == "h")


def test_trajectory_starts_at_minus_cube_root_of_half():
    s0 = s_trajectory("h")[0]
    assert float(s0) == pytest.approx(-(2 ** (-1 / 3)))


def test_collision_scan_small():
    rep = collision_scan(4)
    assert rep.free and rep.n_words == 30 and rep.n_distinct == 30


def test_collision_scan_bound():
    with pytest.raises(ResourceBoundError):
        collision_scan(8, bound=6)


def test_digest_is_stable():
    assert map_digest(psi("hc")) == map_digest(compose(psi("h"), psi("c")))
