from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adhmcert.exactnum import I, ONE, ZERO, GaussRational, ScalarSyntaxError, ZeroDivision, as_scalar, parse_scalar

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gauss = st.builds(GaussRational, rationals, rationals)


def as_pair(z):
    return (z.re, z.im)


@given(gauss, gauss)
def test_field_operations_match_pair_arithmetic(z, w):
    a, b = as_pair(z)
    c, d = as_pair(w)
    assert as_pair(z + w) == (a + c, b + d)
    assert as_pair(z - w) == (a - c, b - d)
    assert as_pair(z * w) == (a * c - b * d, a * d + b * c)
    if w:
        assert (z / w) * w == z


@given(gauss)
def test_inverse_and_conjugate(z):
    if z:
        assert z * z.inv() == ONE
    assert z * z.conj() == GaussRational(z.norm())


@given(gauss)
def test_normalised_triple_is_canonical(z):
    a, b, d = z.triple
    assert d > 0
    assert GaussRational._raw(a * 7, b * 7, d * 7).triple == z.triple
    assert hash(GaussRational(z.re, z.im)) == hash(z)


def test_zero_division():
    with pytest.raises(ZeroDivision):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ONE / 0


def test_integer_and_fraction_interop():
    assert GaussRational(3) == 3
    assert GaussRational(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert 2 - I == GaussRational(2, -1)
    assert I ** 2 == -1
    assert I ** -1 == -I


@pytest.mark.parametrize("text,value", [
    ("3", GaussRational(3)),
    ("-3/4", GaussRational(Fraction(-3, 4))),
    ("i", I),
    ("-i", -I),
    ("2*i", GaussRational(0, 2)),
    ("-1/2*i", GaussRational(0, Fraction(-1, 2))),
    ("1 + 2*i", GaussRational(1, 2)),
    ("-3/2 - i", GaussRational(Fraction(-3, 2), -1)),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "2i", "1/0", "*i", "x", "1.5", "--1", "1 + 2", "i + i", "1 + 2*i + 3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(text)


@given(gauss)
def test_str_round_trips_through_parser(z):
    assert parse_scalar(str(z)) == z


def test_sqrt():
    assert GaussRational(Fraction(9, 4)).sqrt() == Fraction(3, 2)
    assert GaussRational(-4).sqrt() == 2 * I
    assert GaussRational(2).sqrt() is None
    assert GaussRational(1, 1).sqrt() is None


def test_as_scalar_rejects_floats_and_objects():
    with pytest.raises(TypeError):
        as_scalar(1.5)
    with pytest.raises(TypeError):
        as_scalar(1j)
    assert as_scalar(object(), strict=False) is None
