from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from abmodules.errors import ParseError
from abmodules.scalars import (I, ONE, ZERO, Scalar, class_key, congruent_mod_Z,
                               format_scalar, is_nonneg_integer, parse_scalar,
                               sqrt_in_field)

rationals = st.fractions(max_denominator=12).filter(lambda q: abs(q) < 50)
scalars = st.builds(lambda a, b: Scalar(str(a), str(b)), rationals, rationals)


def test_basic_arithmetic():
    assert Scalar("1/2") + Scalar("1/2") == ONE
    assert I * I == -ONE
    assert Scalar("1/3") / Scalar("1/3") == ONE
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_lowest_terms():
    x = Scalar("4/6", "-10/4")
    assert (x.re.numerator, x.re.denominator) == (2, 3)
    assert (x.im.numerator, x.im.denominator) == (-5, 2)


@pytest.mark.parametrize("x,expected", [(3, True), (-1, False), ("1/2", False), (0, True),
                                        ("2+i", False)])
def test_is_nonneg_integer(x, expected):
    assert is_nonneg_integer(Scalar.coerce(x)) is expected


@pytest.mark.parametrize("x,y,expected", [("1/2", "5/2", True), (0, "1/2", False), (-3, 2, True),
                                          ("i", "1+i", True), ("i", 0, False)])
def test_congruent_mod_Z(x, y, expected):
    assert congruent_mod_Z(Scalar.coerce(x), Scalar.coerce(y)) is expected


def test_sqrt_examples():
    assert sqrt_in_field(Scalar("9/4")) == Scalar("3/2")
    assert sqrt_in_field(-ONE) == I
    assert sqrt_in_field(Scalar(2)) is None
    assert sqrt_in_field(Scalar(0, 2)) == Scalar(1, 1)
    assert sqrt_in_field(Scalar(-3, 4)) == Scalar(1, 2)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    if a:
        assert a * a.inverse() == ONE


@given(scalars)
def test_sqrt_of_square(s):
    r = sqrt_in_field(s * s)
    assert r is not None and (r == s or r == -s)


@given(scalars, scalars, scalars)
def test_congruence_is_equivalence(a, b, c):
    assert congruent_mod_Z(a, a)
    assert congruent_mod_Z(a, b) == congruent_mod_Z(b, a)
    if congruent_mod_Z(a, b) and congruent_mod_Z(b, c):
        assert congruent_mod_Z(a, c)
    if is_nonneg_integer(a):
        assert congruent_mod_Z(a, ZERO)


@given(scalars)
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_format_examples():
    assert format_scalar(Scalar("1/2")) == "1/2"
    assert format_scalar(I) == "i"
    assert format_scalar(Scalar(0, "-1/2")) == "-1/2*i"
    assert format_scalar(Scalar("1/2", "1/3")) == "1/2+1/3*i"


def test_class_key():
    assert class_key(Scalar("-1/2")) == class_key(Scalar("3/2"))
    assert class_key(Scalar("-1/3"))[0] == Fraction(2, 3)


def test_parse_rejects_series():
    with pytest.raises(ParseError):
        parse_scalar("1 + b")
    with pytest.raises(TypeError):
        Scalar.coerce(1.5j)
