"""Ladder networks: finite members of the exhaustion, closed forms and convergence.

The infinite ladder has series admittance ``alpha`` along ``a0 - x1 - x2 - ...``
and shunt admittance ``beta`` from each ``x_i`` to a grounded ``a_i``.  Its
``n``-th exhaustion member grounds ``x_n``.  With ``r = beta/alpha`` the
interior potentials satisfy ``v(x_{i+1}) - (2 + r) v(x_i) + v(x_{i-1}) = 0``
whose characteristic roots are ``psi = 1 + r/2 +- xi`` with
``xi = sqrt(r + r^2/4)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InternalError, NotInFieldError, PrecisionError
from .fields import LEVI_CIVITA, RATIONAL, RATIONAL_FUNCTION, LeviCivita, RationalFunction, field_of, get_policy, truncation
from .network import build_network, effective_admittance, solve_dirichlet

CONVERGING = "converging"
DIVERGING = "diverging"
INCONCLUSIVE = "inconclusive"

_FIELD_ORDER = [RATIONAL, RATIONAL_FUNCTION, LEVI_CIVITA]


@dataclass(frozen=True)
class LadderSpec:
    alpha: object
    beta: object
    field: object = None

    def __post_init__(self):
        fld = self.field
        if fld is None:
            fld = max(field_of(self.alpha), field_of(self.beta), key=_FIELD_ORDER.index)
        alpha, beta = fld.coerce(self.alpha), fld.coerce(self.beta)
        if fld.sign(alpha) <= 0 or fld.sign(beta) <= 0:
            raise ValueError("ladder admittances alpha and beta must be positive")
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


def lc_preset(L=1, C=1, field=LEVI_CIVITA):
    """Series coils ``1/(L l)`` and shunt capacitors ``C l`` (``l = 1/t``)."""
    L, C = Fraction(L), Fraction(C)
    if L <= 0 or C <= 0:
        raise ValueError("L and C must be positive")
    if field is RATIONAL_FUNCTION:
        lam = RationalFunction.lam()
        return LadderSpec(1 / (L * lam), C * lam)
    return LadderSpec(LeviCivita.tau(1, 1 / L), LeviCivita.tau(-1, C), field)


def cl_preset(L=1, C=1, field=LEVI_CIVITA):
    """Series capacitors ``C l`` and shunt coils ``1/(L l)``."""
    L, C = Fraction(L), Fraction(C)
    if L <= 0 or C <= 0:
        raise ValueError("L and C must be positive")
    if field is RATIONAL_FUNCTION:
        lam = RationalFunction.lam()
        return LadderSpec(C * lam, 1 / (L * lam))
    return LadderSpec(LeviCivita.tau(-1, C), LeviCivita.tau(1, 1 / L), field)


def build_finite_ladder(spec, n):
    """Exhaustion member with ``x_n`` and ``a_1 .. a_{n-1}`` grounded."""
    if n < 1:
        raise ValueError(f"ladder length must be at least 1, got {n}")
    edges = [("a0", "x1", spec.alpha)]
    edges += [(f"x{i}", f"x{i + 1}", spec.alpha) for i in range(1, n)]
    edges += [(f"a{i}", f"x{i}", spec.beta) for i in range(1, n)]
    boundary = [f"a{i}" for i in range(1, n)] + [f"x{n}"]
    return build_network(edges, "a0", boundary, spec.field)


@dataclass(frozen=True)
class CharacteristicData:
    xi: object
    psi1: object
    psi2: object
    c1: object
    c2: object


def _xi(spec):
    half = spec.beta / (2 * spec.alpha)
    disc = spec.beta / spec.alpha + half * half
    return spec.field.sqrt(disc), half


def characteristic_data(spec, n):
    """Roots of the recurrence and the constants fitting ``v(a0) = 1``, ``v(x_n) = 0``.

    Raises NotInFieldError when the square root is not available; the
    root-free :func:`closed_form_binomial` still applies then.
    """
    xi, half = _xi(spec)
    psi1 = 1 + half + xi
    psi2 = 1 / psi1
    p = psi1 ** (2 * n)
    c1 = 1 / (1 - p)
    c2 = -p / (1 - p)
    return CharacteristicData(xi, psi1, psi2, c1, c2)


def closed_form_xi(spec, n):
    """``alpha (psi^(2n-1) + 1)(r/2 + xi) / (psi^(2n) - 1)`` with ``psi = 1 + r/2 + xi``."""
    xi, half = _xi(spec)
    psi = 1 + half + xi
    return spec.alpha * (psi ** (2 * n - 1) + 1) * (half + xi) / (psi ** (2 * n) - 1)


def closed_form_binomial(spec, n):
    """Root-free closed form: power sums of ``psi1, psi2`` expanded binomially.

    ``psi1^m + psi2^m = 2 sum_k C(m, 2k) h^(m-2k) d^k`` with ``h = 1 + r/2``
    and ``d = xi^2 = r + r^2/4``, so only field operations are needed.
    """
    r = spec.beta / spec.alpha
    h = 1 + r / 2
    d = r + r * r / 4

    def half_power_sum(m):
        return sum((comb(m, 2 * k) * h ** (m - 2 * k) * d**k for k in range(m // 2 + 1)), spec.field.zero())

    num = 2 + r - 2 * half_power_sum(2 * n - 1)
    den = 2 - 2 * half_power_sum(2 * n)
    return spec.alpha * (1 - num / den)


def ladder_closed_form(spec, n):
    if n < 1:
        raise ValueError(f"ladder length must be at least 1, got {n}")
    try:
        return closed_form_xi(spec, n)
    except NotInFieldError:
        return closed_form_binomial(spec, n)


def lc_limit(spec):
    """Candidate limit ``beta / (r/2 + xi)`` of the exhaustion admittances."""
    xi, half = _xi(spec)
    return spec.beta / (half + xi)


def residual_series(spec, n):
    """``P_eff(Gamma_n) - lc_limit = 2 alpha xi / (psi^(2n) - 1)``."""
    xi, half = _xi(spec)
    psi = 1 + half + xi
    return 2 * spec.alpha * xi / (psi ** (2 * n) - 1)


def ladder_window(N):
    """Series window that resolves the ``t^(4N-1)`` residual of an N-step LC exhaustion."""
    return Fraction(4 * N + 8)


@dataclass(frozen=True)
class ExhaustionReport:
    field: object
    admittances: tuple
    differences: tuple
    difference_valuations: tuple
    monotone: bool
    verdict: str
    limit_candidate: object = None
    window: Fraction = None


def _valuation(fld, x):
    if fld is RATIONAL:
        return None
    if fld is LEVI_CIVITA:
        if x.is_indeterminate:
            return None
        return float("inf") if not x.terms else x.valuation()
    return float("inf") if not x else x.valuation()


def exhaustion_sequence(spec, N, window=None, with_limit=None):
    """Solve ``Gamma_1 .. Gamma_N`` directly and summarise the sequence of admittances.

    Over the Levi-Civita field the truncation window is widened to at least
    ``4N + 8`` for the duration of the call.
    """
    if N < 1:
        raise ValueError(f"need at least one exhaustion step, got {N}")
    fld = spec.field
    if window is None:
        window = get_policy().window
        if fld is LEVI_CIVITA:
            window = max(window, ladder_window(N))
    with truncation(window=window):
        values = [effective_admittance(build_finite_ladder(spec, n)) for n in range(1, N + 1)]
        diffs = [b - a for a, b in zip(values, values[1:])]
        limit = None
        if with_limit or with_limit is None:
            try:
                limit = lc_limit(spec)
            except NotInFieldError:
                if with_limit:
                    raise
    for i, d in enumerate(diffs, start=1):
        try:
            s = fld.sign(d)
        except PrecisionError as exc:
            raise PrecisionError(f"cannot certify P(Gamma_{i + 1}) <= P(Gamma_{i}) at window {window}") from exc
        if s > 0:
            raise InternalError(f"monotonicity violated: P(Gamma_{i + 1}) > P(Gamma_{i})")
    vals = tuple(_valuation(fld, d) for d in diffs)
    verdict = cauchy_analysis(values, diffs, vals) if len(values) >= 3 else INCONCLUSIVE
    return ExhaustionReport(fld, tuple(values), tuple(diffs), vals, True, verdict, limit, Fraction(window))


def cauchy_analysis(report_or_values, differences=None, valuations=None, window=None):
    """Finite-window convergence heuristic from the valuations of successive differences.

    ``converging`` when the valuations strictly increase over the last
    ``window`` differences (or every difference is exactly zero),
    ``diverging`` when they never increase, ``inconclusive`` otherwise or
    when the field has no valuation.  This is evidence, not a proof.
    """
    if isinstance(report_or_values, ExhaustionReport):
        values = report_or_values.admittances
        differences = report_or_values.differences
        valuations = report_or_values.difference_valuations
    else:
        values = report_or_values
    if len(values) < 3:
        raise ValueError("convergence analysis needs at least three terms")
    if differences is None:
        differences = [b - a for a, b in zip(values, values[1:])]
    if all(_is_exact_zero(d) for d in differences):
        return CONVERGING
    if valuations is None:
        return INCONCLUSIVE
    vals = list(valuations)
    if window is not None:
        if window < 2:
            raise ValueError("window must cover at least two differences")
        vals = vals[-window:]
    if any(v is None for v in vals):
        return INCONCLUSIVE
    pairs = list(zip(vals, vals[1:]))
    if all(b > a for a, b in pairs):
        return CONVERGING
    if all(b <= a for a, b in pairs) and all(v != float("inf") for v in vals):
        return DIVERGING
    return INCONCLUSIVE


def _is_exact_zero(d):
    if isinstance(d, LeviCivita):
        return d.is_exact and not d.terms
    return d == 0


def recurrence_residuals(spec, n, potentials=None):
    """``v(x_{i+1}) - (2 + r) v(x_i) + v(x_{i-1})`` for ``i = 2 .. n-1`` (all zero for a solution)."""
    v = potentials if potentials is not None else solve_dirichlet(build_finite_ladder(spec, n))
    r = spec.beta / spec.alpha
    return [v[f"x{i + 1}"] - (2 + r) * v[f"x{i}"] + v[f"x{i - 1}"] for i in range(2, n)]
