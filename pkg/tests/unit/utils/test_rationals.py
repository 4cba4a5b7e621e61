"""Unit tests for rational parsing and formatting."""

from fractions import Fraction

import pytest

from utils.rationals import format_decimal, format_rational, parse_rational


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("1/3", Fraction(1, 3)),
        (" 2/4 ", Fraction(1, 2)),
        ("0.25", Fraction(1, 4)),
        (3, Fraction(3)),
        (0.1, Fraction(1, 10)),
        (Fraction(5, 7), Fraction(5, 7)),
    ],
)
def test_parse_rational(raw, expected):
    assert parse_rational(raw) == expected


@pytest.mark.parametrize("raw", ["abc", "1/0", True, None, [1]])
def test_parse_rational_rejects(raw):
    with pytest.raises(ValueError):
        parse_rational(raw)


def test_format_rational_keeps_the_denominator():
    assert format_rational(Fraction(3, 6)) == "1/2"
    assert format_rational(Fraction(2)) == "2/1"


def test_format_decimal():
    assert format_decimal(Fraction(1, 3)) == "0.3333333333"
    assert format_decimal(0.5, digits=2) == "0.50"
