"""Scanner for sums of monomials ``c*X^q`` shared by the polynomial and series parsers."""

import re
from fractions import Fraction

from ..errors import ParseError

_RATIONAL = r"\d+(?:\s*/\s*\d+)?"
_SIGNED = r"-?\s*" + _RATIONAL
_EXPONENT = rf"\^\s*(?:\(\s*(?P<pexp>{_SIGNED})\s*\)|(?P<exp>{_SIGNED}))"
_WS = re.compile(r"\s*")
_SIGN = re.compile(r"[+-]")


def _compile(var):
    term = re.compile(
        rf"(?P<coef>{_RATIONAL})?\s*(?P<star>\*)?\s*(?P<var>{var}(?:\s*{_EXPONENT})?)?"
    )
    big_o = re.compile(rf"O\s*\(\s*{var}(?:\s*{_EXPONENT})?\s*\)")
    return term, big_o


_PATTERNS = {}


def parse_fraction(text):
    return Fraction(re.sub(r"\s+", "", text))


def scan_monomials(text, var, allow_big_o=False):
    """Split ``text`` into ``[(exponent, coefficient), ...]`` plus an optional ``O(var^w)`` bound.

    Exponents are returned as Fractions; repeated exponents are left for the
    caller to combine. Raises ParseError with a 1-based column on bad input.
    """
    if var not in _PATTERNS:
        _PATTERNS[var] = _compile(var)
    term_re, big_o_re = _PATTERNS[var]
    pos = _WS.match(text, 0).end()
    terms = []
    bound = None
    first = True
    while pos < len(text):
        sign = 1
        m = _SIGN.match(text, pos)
        if m:
            sign = -1 if m.group() == "-" else 1
            pos = _WS.match(text, m.end()).end()
        elif not first:
            raise ParseError(f"expected '+' or '-' in {text!r}", column=pos + 1)
        first = False
        if bound is not None:
            raise ParseError(f"nothing may follow the O(...) term in {text!r}", column=pos + 1)
        m = big_o_re.match(text, pos) if allow_big_o else None
        if m:
            if sign < 0:
                raise ParseError("O(...) term cannot be negated", column=pos + 1)
            bound = _exponent(m)
            pos = _WS.match(text, m.end()).end()
            continue
        m = term_re.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"expected a term at {text[pos:pos + 10]!r}", column=pos + 1)
        if m.group("star") and not (m.group("coef") and m.group("var")):
            raise ParseError("'*' must join a coefficient and a variable", column=pos + 1)
        if m.group("coef") and m.group("var") and not m.group("star"):
            raise ParseError("missing '*' between coefficient and variable", column=pos + 1)
        coef = parse_fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        exponent = _exponent(m) if m.group("var") else Fraction(0)
        terms.append((exponent, sign * coef))
        pos = _WS.match(text, m.end()).end()
    if first:
        raise ParseError("empty expression", column=1)
    return terms, bound


def _exponent(m):
    raw = m.group("pexp") or m.group("exp")
    return parse_fraction(raw) if raw is not None else Fraction(1)


def format_monomials(terms, var, bound=None):
    """Inverse of :func:`scan_monomials`; ``terms`` must already be combined and nonzero."""
    parts = []
    for exp, coef in terms:
        mag = abs(coef)
        if exp == 0:
            body = str(mag)
        else:
            if exp == 1:
                power = var
            elif exp.denominator == 1:
                power = f"{var}^{exp.numerator}"
            else:
                power = f"{var}^({exp})"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if coef > 0 else "-" + body)
        else:
            parts.append(("+ " if coef > 0 else "- ") + body)
    if bound is not None:
        if bound == 1:
            o_term = f"O({var})"
        elif bound.denominator == 1:
            o_term = f"O({var}^{bound.numerator})"
        else:
            o_term = f"O({var}^({bound}))"
        parts.append(("+ " if parts else "") + o_term)
    return " ".join(parts) if parts else "0"
