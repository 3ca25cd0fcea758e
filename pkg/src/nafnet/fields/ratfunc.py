"""Rational functions of the spectral parameter ``l`` (lambda) with rational coefficients.

Ordered so that ``f > 0`` iff the ratio of the leading (highest-degree)
coefficients of numerator and denominator is positive, i.e. ``l`` is an
infinitely large positive element.  Under ``t = 1/l`` this is the order
inherited from the Levi-Civita field, see :meth:`RationalFunction.embed`.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..errors import NotInFieldError, ParseError
from ._text import format_monomials, scan_monomials
from .levicivita import LeviCivita
from .rational import rational_sqrt


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``l**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree, coef=1):
        return cls([0] * degree + [coef])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self):
        return Poly([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return Poly([x * other for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, lead = other.degree, other.lead
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            q = rem[k] / lead
            if q:
                quot[k - dd] = q
                for j, y in enumerate(other.coeffs):
                    rem[k - dd + j] -= q * y
        return Poly(quot), Poly(rem)

    def monic(self):
        return self * (1 / self.lead) if self.coeffs else self

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sqrt(self):
        """Exact square root with positive leading coefficient, or NotInFieldError."""
        if not self.coeffs:
            return self
        if self.degree % 2:
            raise NotInFieldError(f"odd degree polynomial {self} is not a square")
        m = self.degree // 2
        root = [Fraction(0)] * (m + 1)
        root[m] = rational_sqrt(self.lead)
        # match coefficients of l^(2m-k) from the top
        for k in range(1, m + 1):
            acc = self.coeffs[2 * m - k]
            for i in range(1, k):
                acc -= root[m - i] * root[m - k + i]
            root[m - k] = acc / (2 * root[m])
        r = Poly(root)
        if r * r != self:
            raise NotInFieldError(f"{self} is not the square of a polynomial")
        return r

    def __str__(self):
        terms = [(Fraction(i), c) for i, c in reversed(list(enumerate(self.coeffs))) if c]
        return format_monomials(terms, "l")

    def __repr__(self):
        return f"Poly({str(self)!r})"

    @classmethod
    def parse(cls, text):
        terms, _ = scan_monomials(text, "l")
        out = {}
        for exp, coef in terms:
            if exp.denominator != 1 or exp < 0:
                raise ParseError(f"polynomial exponent must be a nonnegative integer, got {exp}", column=1)
            out[int(exp)] = out.get(int(exp), 0) + coef
        size = max(out, default=-1) + 1
        return cls([out.get(i, 0) for i in range(size)])


_ONE = Poly([1])


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """Reduced quotient ``num/den`` with ``den`` monic and ``gcd(num, den) = 1``."""

    num: Poly
    den: Poly = _ONE

    def __post_init__(self):
        num, den = self.num, self.den
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = Poly(), _ONE
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            lead = den.lead
            num, den = num * (1 / lead), den * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def lam(cls, power=1):
        if power >= 0:
            return cls(Poly.monomial(power))
        return cls(_ONE, Poly.monomial(-power))

    @classmethod
    def constant(cls, c):
        return cls(Poly([c]))

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Rational):
            return RationalFunction(Poly([x]))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        num, den = _ONE, _ONE
        for _ in range(n):
            num, den = num * self.num, den * self.den
        return RationalFunction(num, den)

    def sign(self):
        return (self.num.lead > 0) - (self.num.lead < 0)

    def valuation(self):
        """Exponent of the leading term after ``t = 1/l``."""
        if not self.num:
            raise ValueError("the valuation of zero is undefined")
        return Fraction(self.den.degree - self.num.degree)

    def sqrt(self):
        if self.sign() < 0:
            raise NotInFieldError(f"{self} is negative and has no square root")
        lead = self.num.lead
        return RationalFunction(self.num.monic().sqrt() * rational_sqrt(lead) if self.num else Poly(), self.den.sqrt())

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def embed(self, policy=None):
        """Image in the Levi-Civita field under ``l = 1/t``.

        ``N(1/t)/D(1/t) = t^(deg D - deg N) * rev(N)(t) / rev(D)(t)`` where
        ``rev`` reverses the coefficient list; the quotient is expanded by
        series inversion.
        """
        if not self.num:
            return LeviCivita()
        n, d = self.num.degree, self.den.degree
        rev_num = LeviCivita([(n - i, c) for i, c in enumerate(self.num.coeffs)])
        rev_den = LeviCivita([(d - i, c) for i, c in enumerate(self.den.coeffs)])
        shift = LeviCivita.tau(d - n)
        if self.den.degree == 0:
            return rev_num * shift * (1 / self.den.lead)
        return rev_num * rev_den.inverse(policy) * shift

    # order
    def _cmp(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).sign()

    def __lt__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return s if s is NotImplemented else s >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den == _ONE and self.num.degree <= 0:
            return hash(self.num.lead)
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == _ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    @classmethod
    def parse(cls, text):
        """Read ``(num)/(den)``, ``(num)`` or a bare polynomial in ``l``."""
        s = text.strip()
        if not s.startswith("("):
            return cls(Poly.parse(s))
        close = _matching_paren(s, 0)
        num = Poly.parse(s[1:close])
        rest = s[close + 1:].strip()
        if not rest:
            return cls(num)
        if not rest.startswith("/"):
            raise ParseError(f"expected '/' after numerator in {text!r}", column=close + 2)
        rest = rest[1:].strip()
        if rest.startswith("("):
            end = _matching_paren(rest, 0)
            if rest[end + 1:].strip():
                raise ParseError(f"trailing text after denominator in {text!r}", column=len(text))
            rest = rest[1:end]
        return cls(num, Poly.parse(rest))


def _matching_paren(s, start):
    depth = 0
    for i in range(start, len(s)):
        if s[i] == "(":
            depth += 1
        elif s[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced parenthesis in {s!r}", column=start + 1)


@dataclass(frozen=True)
class ElementSpec:
    """Passive element with inductance L, resistance R and inverse capacitance D."""

    L: Fraction = Fraction(0)
    R: Fraction = Fraction(0)
    D: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("L", "R", "D"):
            value = Fraction(getattr(self, name))
            if value < 0:
                raise ValueError(f"element parameter {name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)
        if not (self.L or self.R or self.D):
            raise ValueError("element needs at least one of L, R, D positive")


def element_admittance(spec):
    """``l / (L l^2 + R l + D)``: coil ``1/(L l)``, resistor ``1/R``, capacitor ``l/D``."""
    return RationalFunction(Poly([0, 1]), Poly([spec.D, spec.R, spec.L]))
