from fractions import Fraction

import pytest
from hypothesis import given, settings

from gcverify.parse import ParseError, parse_expression
from gcverify.poly import GaussRational, Poly
from strategies import CHART2, CHART3, polys

x = Poly.var(CHART2, "x")
y = Poly.var(CHART2, "y")


def test_two_term_expression():
    p = parse_expression("1/2*x^2 - i*y", CHART2)
    assert len(p) == 2
    assert p == x ** 2 * Fraction(1, 2) - y * GaussRational(0, 1)


def test_zero_is_empty():
    assert parse_expression("0", CHART2).terms == []


def test_trailing_operator_position():
    with pytest.raises(ParseError) as err:
        parse_expression("x + ", CHART2)
    assert err.value.position == 4


@pytest.mark.parametrize("src", ["w", "x^y", "x/2", "(x", "x)", "2^", "x**2", "1/0", ""])
def test_rejects_malformed(src):
    with pytest.raises(ParseError):
        parse_expression(src, CHART2)


def test_unknown_identifier_reports_its_position():
    with pytest.raises(ParseError) as err:
        parse_expression("x + w", CHART2)
    assert err.value.position == 4
    assert "w" in str(err.value)


def test_precedence_and_unary_minus():
    assert parse_expression("-x^2", CHART2) == -(x ** 2)
    assert parse_expression("2*(x + y)^2", CHART2) == (x + y) ** 2 * 2
    assert parse_expression("x - -y", CHART2) == x + y
    assert parse_expression("(1 + 2*i)*(1 - 2*i)", CHART2) == Poly.const(CHART2, 5)


@settings(max_examples=80, deadline=None)
@given(polys(CHART3, 3, 4, complex_coeffs=True))
def test_print_parse_round_trip(p):
    assert parse_expression(str(p), CHART3) == p
