"""The three ordered fields and the small descriptor the rest of the package is generic over.

Elements are plain Python numbers-like objects (``Fraction``,
:class:`RationalFunction`, :class:`LeviCivita`) supporting ``+ - * /``,
integer powers and comparisons.  A :class:`Field` bundles what cannot be
spelled with operators: parsing, printing, sign, square roots, and the
notion of equality appropriate to the field (exact, or up to the watermark
for truncated series).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..errors import NotInFieldError, ParseError
from .levicivita import (
    DEFAULT_POLICY,
    LeviCivita,
    TruncationPolicy,
    get_policy,
    tau,
    truncation,
)
from .rational import format_rational, parse_rational, rational_sign, rational_sqrt
from .ratfunc import ElementSpec, Poly, RationalFunction, element_admittance

__all__ = [
    "DEFAULT_POLICY",
    "ElementSpec",
    "Field",
    "FIELDS",
    "LEVI_CIVITA",
    "LeviCivita",
    "Poly",
    "RATIONAL",
    "RATIONAL_FUNCTION",
    "RationalFunction",
    "TruncationPolicy",
    "element_admittance",
    "embed_rational_function",
    "field_of",
    "get_policy",
    "tau",
    "truncation",
]


@dataclass(frozen=True)
class Field:
    name: str
    element_type: type
    parse_text: Callable
    coerce: Callable
    sign: Callable
    sqrt: Callable
    valuation: Callable = None

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def parse(self, text):
        return self.parse_text(text.strip()) if isinstance(text, str) else self.coerce(text)

    def format(self, x):
        return format_rational(x) if self is RATIONAL else str(x)

    def is_positive(self, x):
        return self.sign(x) > 0

    def agree(self, a, b):
        """Equality as the field can certify it: exact, or up to watermark for series."""
        if self is LEVI_CIVITA:
            return self.coerce(a).agrees_with(b)
        return a == b

    def from_element(self, spec):
        """Admittance of a passive element ``spec`` as an element of this field."""
        rho = element_admittance(spec)
        if self is RATIONAL_FUNCTION:
            return rho
        if self is LEVI_CIVITA:
            return rho.embed()
        if spec.L or spec.D:
            raise NotInFieldError("only pure resistors (L = D = 0) have rational admittance")
        return 1 / spec.R


def _coerce_rational(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


def _coerce_ratfunc(x):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.constant(_coerce_rational(x))


def _coerce_lc(x):
    if isinstance(x, LeviCivita):
        return x
    if isinstance(x, RationalFunction):
        return x.embed()
    return LeviCivita(_coerce_rational(x))


def _wrap_parse(parser):
    def parse(text):
        try:
            return parser(text)
        except ParseError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), column=1) from exc

    return parse


RATIONAL = Field(
    name="rational",
    element_type=Fraction,
    parse_text=_wrap_parse(parse_rational),
    coerce=_coerce_rational,
    sign=rational_sign,
    sqrt=rational_sqrt,
)
RATIONAL_FUNCTION = Field(
    name="rational_function",
    element_type=RationalFunction,
    parse_text=_wrap_parse(RationalFunction.parse),
    coerce=_coerce_ratfunc,
    sign=lambda x: _coerce_ratfunc(x).sign(),
    sqrt=lambda x: _coerce_ratfunc(x).sqrt(),
    valuation=lambda x: _coerce_ratfunc(x).valuation(),
)
LEVI_CIVITA = Field(
    name="levi_civita",
    element_type=LeviCivita,
    parse_text=_wrap_parse(LeviCivita.parse),
    coerce=_coerce_lc,
    sign=lambda x: _coerce_lc(x).sign(),
    sqrt=lambda x: _coerce_lc(x).sqrt(),
    valuation=lambda x: _coerce_lc(x).valuation(),
)
FIELDS = {f.name: f for f in (RATIONAL, RATIONAL_FUNCTION, LEVI_CIVITA)}


def field_of(x):
    """Smallest of the three fields containing ``x``."""
    if isinstance(x, LeviCivita):
        return LEVI_CIVITA
    if isinstance(x, RationalFunction):
        return RATIONAL_FUNCTION
    if isinstance(x, (int, Fraction)):
        return RATIONAL
    raise TypeError(f"{type(x).__name__} is not an element of a supported field")


def embed_rational_function(f, policy=None):
    return f.embed(policy)
