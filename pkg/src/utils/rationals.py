"""Parsing and formatting of exact rationals.

Rationals travel through configs and CSV output as "p/q" strings.
"""

from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str, float]


def parse_rational(value: RationalLike) -> Fraction:
    """Converts "p/q", integer or decimal strings and numbers to a Fraction.

    Floats are converted through their shortest decimal repr, so 0.1 becomes 1/10
    rather than the binary expansion.

    Raises:
        ValueError: If the value cannot be read as a rational.
    """
    if isinstance(value, bool):
        raise ValueError(f"Expected a rational number, got boolean {value}.")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Cannot parse '{value}' as a rational number.") from e
    raise ValueError(f"Cannot parse {value!r} of type {type(value).__name__} as a rational number.")


def format_rational(value: Fraction) -> str:
    """Renders a Fraction as "p/q" (integers keep a "/1" suffix for uniform CSV columns)."""
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Union[Fraction, float], digits: int = 10) -> str:
    return f"{float(value):.{digits}f}"
