from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secantplanes.exact import (
    ExactArithmeticError, Poly, TruncatedSeries, mu, rational_str, rho,
    series_binomial_pow, series_exp, series_log,
)

m, g = Poly.var("m"), Poly.var("g")

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=5)
polys = terms.map(Poly)
ORDER = 7


@st.composite
def series(draw, constant=None):
    coeffs = draw(st.lists(small, min_size=ORDER, max_size=ORDER))
    if constant is not None:
        coeffs[0] = Fraction(constant)
    return TruncatedSeries(coeffs)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly()
    assert a * 1 == a


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_divexact_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


@settings(max_examples=40, deadline=None)
@given(polys, small, small)
def test_evaluate_is_a_ring_map(a, x, y):
    b = a * a + m
    assert b.evaluate(m=x, g=y) == a.evaluate(m=x, g=y) ** 2 + x


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=6),
       st.fractions(min_value=-5, max_value=5, max_denominator=6),
       st.integers(-3, 3))
def test_binomial_pow_additivity(p, q, c):
    lhs = series_binomial_pow(c, p + q, ORDER)
    assert lhs == series_binomial_pow(c, p, ORDER) * series_binomial_pow(c, q, ORDER)


def test_binomial_pow_symbolic_exponent():
    s = series_binomial_pow(4, m, 5)
    assert s[1] == 4 * m
    assert s[2].evaluate(m=Fraction(1, 2), g=0) == -2  # sqrt(1+4z) = 1 + 2z - 2z^2 + ...


@settings(max_examples=30, deadline=None)
@given(series(constant=0), series(constant=0))
def test_exp_additivity(a, b):
    assert series_exp(a + b) == series_exp(a) * series_exp(b)


@settings(max_examples=30, deadline=None)
@given(series(constant=0))
def test_log_inverts_exp(a):
    assert series_log(series_exp(a)) == a


@settings(max_examples=30, deadline=None)
@given(series(constant=1))
def test_series_inverse(a):
    assert a * a.inverse() == TruncatedSeries.one(ORDER)


def test_series_exp_needs_zero_constant():
    with pytest.raises(ExactArithmeticError):
        series_exp(TruncatedSeries([1, 1, 0]))


def test_series_index_past_order():
    with pytest.raises(IndexError):
        TruncatedSeries([1, 2])[2]


def test_divexact_rejects_remainder():
    with pytest.raises(ExactArithmeticError):
        (m * m + 1).divexact(m + g)


def test_str_and_records_roundtrip():
    p = Fraction(1, 2) * m * m - 4 * g + 4
    assert str(p) == "1/2*m^2 - 4*g + 4"
    assert Poly.from_records(p.to_records()) == p
    assert rational_str(Fraction(-20)) == "-20/1"


def test_partial_evaluation_stays_symbolic():
    p = m * g + m
    q = p.evaluate(g=3)
    assert isinstance(q, Poly) and q == 4 * m


def test_brill_noether_numbers():
    assert rho(8, 3, 9) == 0
    # divisorial case: d-secant (d-2)-planes to a g^{2d-1} have expected dimension -1
    assert all(mu(d, 1, 2 * d - 1) == -1 for d in range(1, 10))
