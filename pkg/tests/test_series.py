import pytest
from hypothesis import given, strategies as st

from abmodules.errors import NotAUnit, ParseError, PrecisionInconclusive
from abmodules.scalars import ONE, Scalar
from abmodules.series import INFINITE, Series, format_series, parse_series

P = 10
small = st.sampled_from([Scalar(x) for x in (0, 1, -1, 2, "1/2", "-1/3")] + [Scalar(0, 1), Scalar(1, -1)])
series = st.lists(small, min_size=P, max_size=P).map(lambda cs: Series(cs, P))


def s(text, prec=P):
    return parse_series(text, prec)


def test_ring_examples():
    assert s("1+b") * s("1-b") == s("1 - b^2")
    assert s("3 + b") + Series.zero(P) == s("3 + b")
    assert s("b") * s("b") == s("b^2")


def test_precision_rules():
    f, g = Series([1, 2], 5), Series([1], 3)
    assert (f + g).prec == 3 and (f * g).prec == 3
    assert f.shift(2).prec == 7
    assert s("b^2 + b^3").divide_by_b(2) == Series([1, 1], P - 2)
    with pytest.raises(ArithmeticError):
        s("1 + b").divide_by_b(1)


def test_derivative():
    assert s("b^2").derivative() == s("2*b", P - 1)
    assert s("1").derivative().is_zero()
    assert s("1 + b + b^2").derivative() == s("1 + 2*b", P - 1)
    assert s("1 + b").derivative().prec == P - 1
    with pytest.raises(PrecisionInconclusive):
        Series([1], 1).derivative()


def test_conj_b():
    assert s("1 + b + b^2").conj_b() == s("1 - b + b^2")
    assert s("b^3").conj_b() == s("-b^3")


def test_invert():
    g = s("1 - b").invert()
    assert all(c == ONE for c in g.coeffs)
    assert s("1").invert() == s("1")
    with pytest.raises(NotAUnit):
        s("b").invert()


def test_valuation():
    assert s("b^2 + b^3").valuation() == 2
    assert Series.zero(P).valuation() == INFINITE
    assert s("1").valuation() == 0


@given(series, series, series)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@given(series, series)
def test_conj_b_automorphism(f, g):
    assert (f * g).conj_b() == f.conj_b() * g.conj_b()
    assert f.conj_b().conj_b().identical(f)


@given(series, series)
def test_valuation_additive(f, g):
    vf, vg = f.valuation(), g.valuation()
    if vf != INFINITE and vg != INFINITE and vf + vg < P:
        assert (f * g).valuation() == vf + vg


@given(series)
def test_inverse_property(f):
    if f.is_unit():
        assert f * f.invert() == Series.one(P)


@given(series)
def test_format_roundtrip(f):
    assert parse_series(format_series(f, with_order=True)).identical(f)


def test_format_syntax():
    assert format_series(s("3/2 + b - 1/4*b^3")) == "3/2 + b - 1/4*b^3"
    assert format_series(s("(1+i)*b")) == "(1+i)*b"
    assert format_series(Series.zero(3), with_order=True) == "O(b^3)"
    assert parse_series("1 + b + O(b^4)").prec == 4


@pytest.mark.parametrize("bad", ["1 +", "b^", "(1", "2**b", "x", "1/0"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_series(bad)
