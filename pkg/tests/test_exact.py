from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vcert.exact import (
    CLin,
    CLinPolyM,
    CPoly,
    InexactDivisionError,
    NonLinearCError,
    PolyM,
    binom,
    clin_interpolate,
    cpoly_gcd,
    fmt_rat,
    parse_rat,
    poly_divexact,
    poly_interpolate,
)

rats = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)
small_polys = st.lists(rats, max_size=6).map(PolyM)


@pytest.mark.parametrize("top,k,value", [(-2, 1, -2), (4, 2, 6), (-3, 2, 6), (5, 0, 1), (3, 5, 0)])
def test_binom_examples(top, k, value):
    assert binom(top, k) == value


def test_binom_rejects_negative_k():
    with pytest.raises(ValueError):
        binom(3, -1)


@given(st.integers(-30, 30), st.integers(1, 12))
def test_binom_pascal(top, k):
    assert binom(top, k) == binom(top - 1, k) + binom(top - 1, k - 1)


def test_interpolation_examples():
    assert poly_interpolate([(0, 1), (1, 1)]) == PolyM([1])
    assert poly_interpolate([(0, 0), (1, 1), (2, 4)]) == PolyM([0, 0, 1])
    with pytest.raises(ValueError):
        poly_interpolate([(1, 2), (1, 3)])


@given(st.lists(rats, min_size=1, max_size=8))
def test_interpolation_reproduces_samples(values):
    samples = [(2 * i + 14, v) for i, v in enumerate(values)]
    p = poly_interpolate(samples)
    assert all(p(m) == v for m, v in samples)
    assert p.degree < len(samples)


def test_clin_interpolation():
    target = CLinPolyM(PolyM([1, 2]), PolyM([0, 0, 3]))
    assert clin_interpolate([(m, target(m)) for m in range(5)]) == target


def test_divexact_examples():
    m = PolyM.m()
    assert poly_divexact(m * m - 1, m - 1) == m + 1
    with pytest.raises(InexactDivisionError):
        poly_divexact(m * m + 1, m + 1)


@given(small_polys, small_polys.filter(bool))
def test_divexact_roundtrip(a, b):
    assert poly_divexact(a * b, b) == a


@given(rats, rats, rats)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    x, y = CLin(a, b), CLin(c, a)
    assert x + y - y == x
    assert (x * c) * 2 == x * (2 * c)


def test_clin_rejects_c_squared():
    with pytest.raises(NonLinearCError):
        CLin(0, 1) * CLin(0, 1)


def test_cpoly_division_and_gcd():
    c = CPoly.c()
    a = (c + 1) * (c - 2)
    b = (c + 1) * (c + 5)
    assert cpoly_gcd(a, b) == c + 1
    assert a.divexact(c + 1) == c - 2
    with pytest.raises(InexactDivisionError):
        a.divexact(c + 3)


@given(rats)
def test_rational_string_roundtrip(x):
    assert parse_rat(fmt_rat(x)) == x
    assert "/" in fmt_rat(x)


def test_json_forms():
    assert CLin(Fraction(1, 2), -3).to_json() == ["1/2", "-3/1"]
    assert CLin.from_json(["1/2", "-3/1"]) == CLin(Fraction(1, 2), -3)
    assert PolyM.from_json(PolyM([1, Fraction(2, 3)]).to_json()) == PolyM([1, Fraction(2, 3)])
