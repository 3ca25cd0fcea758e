"""Exact rationals: Python's :class:`fractions.Fraction` plus the few helpers it lacks."""

import math
import re
from fractions import Fraction

from ..errors import NotInFieldError, ParseError

_RATIONAL_TEXT = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text):
    m = _RATIONAL_TEXT.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}", column=1)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", column=1)
    return Fraction(num, den)


def format_rational(q):
    return str(Fraction(q))


def rational_sqrt(q):
    """Return the nonnegative rational square root of ``q`` or raise NotInFieldError."""
    q = Fraction(q)
    if q < 0:
        raise NotInFieldError(f"{q} has no square root in an ordered field")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise NotInFieldError(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


def rational_sign(q):
    return (q > 0) - (q < 0)
