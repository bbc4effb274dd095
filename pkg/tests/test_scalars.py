import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pptkit.scalars import (
    EXACT,
    FLOAT,
    I,
    BackendMismatchError,
    QQi,
    ScalarSyntaxError,
    common_backend,
    format_scalar,
    magnitude,
    parse_scalar,
    to_backend,
)

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
gaussians = st.builds(QQi, fractions, fractions)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(gaussians)
def test_inverse_and_conjugate(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == 1
    assert a * a.conjugate() == QQi(a.abs2())


@given(gaussians)
def test_exact_matches_float_shadow(a):
    assert abs(complex(a * a) - complex(a) ** 2) < 1e-6 * (1 + abs(complex(a)) ** 2)


def test_i_squared():
    assert I * I == -1
    assert I**-1 == -I


def test_no_silent_promotion():
    with pytest.raises(BackendMismatchError):
        QQi(1) + 0.5
    with pytest.raises(BackendMismatchError):
        QQi(1) * 1j
    with pytest.raises(BackendMismatchError):
        common_backend(QQi(1), 2.0)
    with pytest.raises(BackendMismatchError):
        to_backend(0.5, EXACT)


def test_ints_adapt_to_either_backend():
    assert common_backend(1, Fraction(1, 2)) == EXACT
    assert common_backend(1, 2.5) == FLOAT
    assert to_backend(QQi(1, 2), FLOAT) == complex(1, 2)


def test_immutable():
    with pytest.raises(AttributeError):
        QQi(1).re = 2


def test_magnitude_is_exact():
    assert magnitude(QQi(Fraction(-3, 2), 1)) == Fraction(3, 2)


@pytest.mark.parametrize(
    "text, value",
    [
        ("1/3", QQi(Fraction(1, 3))),
        ("0.5", QQi(Fraction(1, 2))),
        ("i", QQi(0, 1)),
        ("-2i", QQi(0, -2)),
        ("2+3i", QQi(2, 3)),
        ("1/2-1/3i", QQi(Fraction(1, 2), Fraction(-1, 3))),
        ("-1", QQi(-1)),
    ],
)
def test_parse_exact(text, value):
    assert parse_scalar(text) == value


def test_parse_angle_is_float_only():
    z = parse_scalar("exp(i*pi/3)")
    assert isinstance(z, complex)
    assert abs(z - cmath.exp(1j * math.pi / 3)) < 1e-15
    assert abs(parse_scalar("exp(-i*pi/2)") + 1j) < 1e-15
    with pytest.raises(ScalarSyntaxError):
        parse_scalar("exp(i*pi/3)", EXACT)


@pytest.mark.parametrize("bad", ["", "abc", "1//2", "2 3", "i i"])
def test_parse_rejects(bad):
    with pytest.raises(ScalarSyntaxError):
        parse_scalar(bad)


def test_format_stable():
    assert format_scalar(QQi(Fraction(1, 3), -1)) == "1/3-i"
    assert format_scalar(QQi(0, Fraction(2, 5))) == "2/5*i"
    assert format_scalar(0.1) == "0.10000000000000001"
    assert format_scalar(complex(1, -2)) == "1-2i"
    assert format_scalar(-0.5j) == "-0.5i"
