"""Truncated arithmetic in the Levi-Civita field.

An element is a finite, exponent-sorted list of ``(exponent, coefficient)``
pairs with rational exponents and rational coefficients, together with a
*watermark* ``w``: every term at an exponent ``>= w`` is unknown, so the
element stands for ``sum(c * t**q) + O(t**w)``.  ``w = inf`` marks an exact
element.  Here ``t`` is the positive infinitesimal of the field.

Exact finite sums (polynomials in ``t`` and ``1/t``) never lose precision.
Infinite expansions only arise from :meth:`LeviCivita.inverse` and
:meth:`LeviCivita.sqrt`; those are cut off according to the active
:class:`TruncationPolicy`, and the cut is carried along by every later
operation.

    >>> t = LeviCivita.tau()
    >>> (3 - 4*t + t**2).inverse().truncate(3)
    LeviCivita('1/3 + 4/9*t + 13/27*t^2 + O(t^3)')
"""

import contextlib
import contextvars
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..errors import NotInFieldError, PrecisionError
from ._text import format_monomials, scan_monomials
from .rational import rational_sqrt

INF = math.inf


@dataclass(frozen=True)
class TruncationPolicy:
    """How many exponent units past its valuation an infinite expansion is kept."""

    window: Fraction = Fraction(40)

    def __post_init__(self):
        window = Fraction(self.window)
        if window <= 0:
            raise ValueError(f"truncation window must be positive, got {window}")
        object.__setattr__(self, "window", window)


DEFAULT_POLICY = TruncationPolicy()
_policy = contextvars.ContextVar("nafnet_truncation_policy", default=DEFAULT_POLICY)


def get_policy():
    return _policy.get()


@contextlib.contextmanager
def truncation(window=None, policy=None):
    """Temporarily replace the active truncation policy.

    >>> with truncation(window=10):
    ...     get_policy().window
    Fraction(10, 1)
    """
    if policy is None:
        policy = TruncationPolicy(window if window is not None else DEFAULT_POLICY.window)
    token = _policy.set(policy)
    try:
        yield policy
    finally:
        _policy.reset(token)


def _min_watermark(*values):
    return min(values, key=lambda w: (w == INF, w))


class LeviCivita:
    __slots__ = ("_terms", "_watermark", "_hash", "_grid")

    def __init__(self, value=0, watermark=INF):
        if isinstance(value, LeviCivita):
            terms, w = value._terms, _min_watermark(value._watermark, watermark)
        elif isinstance(value, str):
            parsed = LeviCivita.parse(value)
            terms, w = parsed._terms, _min_watermark(parsed._watermark, watermark)
        elif isinstance(value, Rational):
            terms, w = [(Fraction(0), Fraction(value))], watermark
        else:
            terms, w = value, watermark
        if w != INF:
            w = Fraction(w)
        acc = {}
        for q, c in terms:
            q = Fraction(q)
            acc[q] = acc.get(q, 0) + Fraction(c)
        self._terms = tuple(
            (q, c) for q, c in sorted(acc.items()) if c != 0 and (w == INF or q < w)
        )
        self._watermark = w
        self._hash = None
        self._grid = None

    @classmethod
    def _raw(cls, terms, watermark):
        # trusted constructor: terms already sorted, combined, nonzero, below watermark
        self = object.__new__(cls)
        self._terms = terms
        self._watermark = watermark
        self._hash = None
        self._grid = None
        return self

    @classmethod
    def tau(cls, power=1, coefficient=1):
        return cls._raw(((Fraction(power), Fraction(coefficient)),), INF) if coefficient else cls()

    monomial = tau

    @classmethod
    def zero_to(cls, watermark):
        """The element known only to vanish below ``watermark``."""
        return cls._raw((), Fraction(watermark))

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self):
        return self._terms

    @property
    def watermark(self):
        return self._watermark

    @property
    def is_exact(self):
        return self._watermark == INF

    @property
    def is_indeterminate(self):
        """True when no term is known: the value is 0 up to ``O(t^watermark)``."""
        return not self._terms and self._watermark != INF

    def coefficient(self, exponent):
        exponent = Fraction(exponent)
        if exponent >= self._watermark:
            raise PrecisionError(f"coefficient of t^{exponent} lies beyond O(t^{self._watermark})")
        for q, c in self._terms:
            if q == exponent:
                return c
        return Fraction(0)

    def valuation(self):
        """Smallest exponent carrying a nonzero coefficient."""
        if self._terms:
            return self._terms[0][0]
        if self.is_exact:
            raise ValueError("the valuation of zero is undefined")
        raise PrecisionError(f"value is O(t^{self._watermark}); valuation unknown")

    def leading(self):
        """``(valuation, coefficient)`` of the dominant term."""
        self.valuation()
        return self._terms[0]

    def sign(self):
        if self._terms:
            return 1 if self._terms[0][1] > 0 else -1
        if self.is_exact:
            return 0
        raise PrecisionError(f"sign of O(t^{self._watermark}) is undetermined; widen the truncation window")

    def truncate(self, watermark):
        w = _min_watermark(self._watermark, Fraction(watermark))
        return LeviCivita._raw(tuple(t for t in self._terms if t[0] < w), w)

    def agrees_with(self, other):
        """Equality up to the coarser of the two watermarks."""
        d = self - other
        return not d._terms

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, LeviCivita):
            return x
        if isinstance(x, Rational):
            return LeviCivita._raw(((Fraction(0), Fraction(x)),) if x else (), INF)
        return NotImplemented

    def __neg__(self):
        return LeviCivita._raw(tuple((q, -c) for q, c in self._terms), self._watermark)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        w = _min_watermark(self._watermark, other._watermark)
        acc = {}
        for q, c in self._terms + other._terms:
            if q < w:
                acc[q] = acc.get(q, 0) + c
        return LeviCivita._raw(tuple((q, c) for q, c in sorted(acc.items()) if c), w)

    __radd__ = __add__

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
        a, b = self, other
        if (a.is_exact and not a._terms) or (b.is_exact and not b._terms):
            return LeviCivita._raw((), INF)
        if not a._terms or not b._terms:
            # an indeterminate factor leaves only a lower bound on the product
            return LeviCivita._raw((), _indeterminate_product_bound(a, b))
        # watermark of a product: min(w_a + v_b, w_b + v_a)
        w = _min_watermark(a._watermark + b._terms[0][0], b._watermark + a._terms[0][0])
        # integer convolution on a common exponent grid and coefficient denominator
        sa, da, ta = a._integer_grid()
        sb, db, tb = b._integer_grid()
        scale = math.lcm(sa, sb)
        fa, fb = scale // sa, scale // sb
        tb = [(k * fb, n) for k, n in tb]
        limit = None if w == INF else math.ceil(w * scale)
        kb0 = tb[0][0]
        acc = {}
        for ka, na in ta:
            ka *= fa
            if limit is not None and ka + kb0 >= limit:
                break
            for kb, nb in tb:
                k = ka + kb
                if limit is not None and k >= limit:
                    break
                acc[k] = acc.get(k, 0) + na * nb
        den = da * db
        terms = tuple((Fraction(k, scale), Fraction(n, den)) for k, n in sorted(acc.items()) if n)
        return LeviCivita._raw(terms, w)

    def _integer_grid(self):
        """``(S, D, [(k, n)])`` with ``self = sum(n/D * t^(k/S))`` for integers k, n."""
        if self._grid is None:
            scale = 1
            den = 1
            for q, c in self._terms:
                scale = math.lcm(scale, q.denominator)
                den = math.lcm(den, c.denominator)
            self._grid = (
                scale,
                den,
                [(q.numerator * (scale // q.denominator), c.numerator * (den // c.denominator)) for q, c in self._terms],
            )
        return self._grid

    __rmul__ = __mul__

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
        result = LeviCivita(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self, policy=None):
        """Multiplicative inverse, expanded up to the policy window.

        With ``a = c*t^v*(1 + e)`` the coefficients of ``1/(1 + e)`` follow
        from matching powers in ``(1 + e) * b = 1`` one lattice step at a time.
        """
        if not self._terms:
            if self.is_exact:
                raise ZeroDivisionError("LeviCivita division by zero")
            raise PrecisionError(f"cannot invert O(t^{self._watermark})")
        v, c = self._terms[0]
        if self.is_exact and len(self._terms) == 1:
            return LeviCivita._raw(((-v, 1 / c),), INF)
        policy = policy or get_policy()
        precision = policy.window
        if self._watermark != INF:
            precision = min(precision, self._watermark - v)
        scale, steps, e = self._lattice(v, c, precision)
        b = [Fraction(0)] * steps
        b[0] = Fraction(1)
        nz = [(k, ek) for k, ek in e.items()]
        for k in range(1, steps):
            s = 0
            for i, ei in nz:
                if i > k:
                    continue
                if b[k - i]:
                    s += ei * b[k - i]
            b[k] = -s
        inv_c = 1 / c
        terms = tuple((-v + Fraction(k, scale), inv_c * bk) for k, bk in enumerate(b) if bk)
        return LeviCivita._raw(terms, -v + precision)

    def sqrt(self, policy=None):
        """The positive square root.

        Only elements whose leading coefficient is the square of a rational
        have a root with rational coefficients; others raise NotInFieldError.
        """
        if not self._terms:
            if self.is_exact:
                return self
            raise PrecisionError(f"square root of O(t^{self._watermark}) is undetermined")
        v, c = self._terms[0]
        if c < 0:
            raise NotInFieldError(f"{self} is negative and has no square root")
        root_c = rational_sqrt(c)
        policy = policy or get_policy()
        precision = policy.window
        if self._watermark != INF:
            precision = min(precision, self._watermark - v)
        scale, steps, e = self._lattice(v, c, precision)
        # (1 + s)^2 = 1 + e, solved coefficient by coefficient
        s = [Fraction(0)] * steps
        for k in range(1, steps):
            acc = e.get(k, 0)
            for i in range(1, k):
                if s[i] and s[k - i]:
                    acc -= s[i] * s[k - i]
            s[k] = acc / 2
        s[0] = Fraction(1)
        half_v = v / 2
        terms = tuple((half_v + Fraction(k, scale), root_c * sk) for k, sk in enumerate(s) if sk)
        root = LeviCivita._raw(terms, half_v + precision)
        if self.is_exact and len(terms) <= 8:
            # perfect squares of short Laurent polynomials stay exact
            exact = LeviCivita._raw(terms, INF)
            if exact * exact == self:
                return exact
        return root

    def _lattice(self, v, c, precision):
        """Normalise ``self/(c t^v) - 1`` onto an integer exponent grid of spacing ``1/scale``."""
        shifts = [q - v for q, _ in self._terms[1:] if q - v < precision]
        scale = 1
        for s in shifts:
            scale = math.lcm(scale, s.denominator)
        scale = math.lcm(scale, precision.denominator)
        steps = int(precision * scale)
        e = {}
        for q, a in self._terms[1:]:
            k = (q - v) * scale
            if k < steps:
                e[int(k)] = a / c
        return scale, steps, e

    # -- order ----------------------------------------------------------------

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
        return bool(self._terms) or not self.is_exact

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other):
        """Structural equality: same known terms and the same watermark."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms and self._watermark == other._watermark

    def __hash__(self):
        if self._hash is None:
            if self.is_exact and not self._terms:
                self._hash = hash(0)
            elif self.is_exact and len(self._terms) == 1 and self._terms[0][0] == 0:
                self._hash = hash(self._terms[0][1])
            else:
                self._hash = hash((self._terms, self._watermark))
        return self._hash

    # -- text -------------------------------------------------------------------

    def __str__(self):
        return format_monomials(self._terms, "t", None if self.is_exact else self._watermark)

    def __repr__(self):
        return f"LeviCivita({str(self)!r})"

    @classmethod
    def parse(cls, text):
        """Read ``c1*t^q1 + c2*t^q2 + ... + O(t^w)``."""
        terms, bound = scan_monomials(text, "t", allow_big_o=True)
        if bound is not None and any(q >= bound for q, c in terms if c):
            raise ValueError(f"term beyond O(t^{bound}) in {text!r}")
        return cls(terms, INF if bound is None else bound)


def _indeterminate_product_bound(a, b):
    # a or b carries no known term: product is O(t^(w_x + lower bound of the other))
    lows = []
    for x, y in ((a, b), (b, a)):
        if not x._terms:
            y_low = y._terms[0][0] if y._terms else y._watermark
            lows.append(x._watermark + y_low)
    return min(lows)


def tau(power=1):
    return LeviCivita.tau(power)
