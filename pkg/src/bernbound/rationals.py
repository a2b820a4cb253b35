"""Exact rational parsing, formatting and interval helpers."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Union

Rational = Union[Fraction, int, str]


def parse_rational(value: Rational) -> Fraction:
    """Parse ``"p/q"``, decimal strings like ``"1.3"``, or ints, exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise ValueError(f"not a rational number: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"p"`` or ``"p/q"`` (lossless)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def float_str(value: Fraction) -> str:
    """Six-significant-digit float rendering, for display only."""
    return f"{float(value):.6g}"


class Interval(NamedTuple):
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    @staticmethod
    def hull(values: Iterable[Fraction]) -> "Interval":
        vals = list(values)
        if not vals:
            raise ValueError("hull of empty collection")
        return Interval(min(vals), max(vals))


def interval_distance(a: Interval, b: Interval) -> Fraction:
    """max(|a.lo - b.lo|, |a.hi - b.hi|), the endpoint distance of intervals."""
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))
