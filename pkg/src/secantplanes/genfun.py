"""Generating functions for the r=1 secant-plane coefficients.

``Z_{g,m}(z) = (2/(sqrt(1+4z)+1))**(2g-2-m) * (1+4z)**((g-1)/2)`` has
``[z^d] Z = N_d(g, m)``, the number of d-secant (d-2)-planes to a
``g^{2d-2}_m``.  Everything else here is ``Z`` times an explicit algebraic
function of ``z``.

``g`` and ``m`` may be integers, rationals or :class:`~secantplanes.exact.Poly`
values; ``None`` means "the symbolic generator" of the bivariate ring.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import (
    BIVAR,
    DEFAULT_ORDER,
    Poly,
    TruncatedSeries,
    as_rational,
    series_binomial_pow,
    series_exp,
)


class SingularParameterError(ValueError):
    """A formula was evaluated where one of its denominators vanishes."""


class GenFunKind(str, enum.Enum):
    Z = "Z"
    Pc = "Pc"
    Palpha = "Palpha"
    Pbeta = "Pbeta"
    Pgamma = "Pgamma"
    Pdelta0 = "Pdelta0"
    X = "X"
    Y = "Y"

    @property
    def conjectural(self) -> bool:
        # P_gamma, P_delta0 rest on the conjectured fifth relation
        return self in (GenFunKind.Pgamma, GenFunKind.Pdelta0)


def _resolve(g, m):
    """Fill in symbolic generators for missing (None) parameters."""
    gens = None
    for x in (g, m):
        if isinstance(x, Poly):
            gens = x.gens
    if gens is None:
        gens = BIVAR
    if g is None:
        g = Poly.var("g", gens)
    if m is None:
        m = Poly.var("m", gens)
    if not isinstance(g, Poly):
        g = as_rational(g)
    if not isinstance(m, Poly):
        m = as_rational(m)
    return g, m


def _is_numeric(*xs) -> bool:
    return not any(isinstance(x, Poly) for x in xs)


def exp_form_exponent(g=None, m=None, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The series whose exponential is ``Z_{g,m}``.

    ``[z^n] = (-1)^(n-1)/n * (C(2n-1, n-1) m + (4^(n-1) - C(2n-1, n-1)) (2g-2))``,
    linear in ``m`` and ``2g-2``.
    """
    g, m = _resolve(g, m)
    coeffs = [Fraction(0)]
    for n in range(1, order):
        b = math.comb(2 * n - 1, n - 1)
        c = (b * m + (4 ** (n - 1) - b) * (2 * g - 2)) * Fraction((-1) ** (n - 1), n)
        coeffs.append(c)
    return TruncatedSeries(coeffs)


def catalan_pow(k, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``(2/(1+sqrt(1+4z)))**k`` for any (possibly symbolic) exponent k.

    Uses the Catalan power expansion
    ``[z^n] = (-1)^n (k/n!) prod_{j=1}^{n-1} (k+n+j)`` for n >= 1.
    """
    coeffs = [Fraction(1)]
    for n in range(1, order):
        acc = k * Fraction((-1) ** n, math.factorial(n))
        for j in range(1, n):
            acc = acc * (k + n + j)
        coeffs.append(acc)
    return TruncatedSeries(coeffs)


def _half_catalan_series(order: int) -> TruncatedSeries:
    """``2/(1+sqrt(1+4z))`` by series division."""
    root = series_binomial_pow(4, Fraction(1, 2), order)
    return TruncatedSeries.constant(2, order) / (root + 1)


def z_series(g=None, m=None, order: int = DEFAULT_ORDER, method: str = "auto") -> TruncatedSeries:
    """``Z_{g,m}(z)`` truncated at ``order``.

    ``method`` is ``"exp"`` (exponential form), ``"closed"`` (the product of
    the two binomial-type factors) or ``"auto"`` (closed for numeric input,
    exponential for symbolic input).
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    g, m = _resolve(g, m)
    if method == "auto":
        method = "closed" if _is_numeric(g, m) else "exp"
    if method == "exp":
        return series_exp(exp_form_exponent(g, m, order))
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    k = 2 * g - 2 - m
    if isinstance(k, Fraction) and k.denominator == 1:
        first = _half_catalan_series(order) ** int(k)
    else:
        first = catalan_pow(k, order)
    second = series_binomial_pow(4, (g - 1) * Fraction(1, 2), order)
    return first * second


@lru_cache(maxsize=None)
def _symbolic_z(order: int) -> TruncatedSeries:
    return z_series(None, None, order, method="exp")


def n_d(d: int, g=None, m=None):
    """``N_d(g, m) = [z^d] Z_{g,m}``; a Poly when g or m is symbolic."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if g is None and m is None:
        return _symbolic_z(max(d + 1, DEFAULT_ORDER))[d]
    return z_series(g, m, d + 1)[d]


def a_prime(d: int, g=None, m=None):
    """Number of (d+1)-secant (d-1)-planes to a degree m+1 curve in P^{2d}.

    Identified with ``N_{d+1}(g, m+1)``.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if m is None:
        _, m_sym = _resolve(g, None)
        m = m_sym
    return n_d(d + 1, g, m + 1)


@lru_cache(maxsize=None)
def xy_series(order: int = DEFAULT_ORDER) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Taylor expansions of the two algebraic functions ``X(z)`` and ``Y(z)``.

    Both have the common denominator ``6 (1+4z)^{5/2} (sqrt(1+4z)+1)``.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    z = TruncatedSeries.monomial(1, order)
    root = series_binomial_pow(4, Fraction(1, 2), order)
    p32 = series_binomial_pow(4, Fraction(3, 2), order)
    p52 = series_binomial_pow(4, Fraction(5, 2), order)
    denom = p52 * (root + 1) * 6
    z2 = z * z
    x_num = z * (z2 * 32 - p32 * 7 + z * 36 + 7)
    y_num = z * (z2 * 32 - p32 + z * 12 + 1)
    return x_num / denom, y_num / denom


def _inv_factorial(n: int) -> Fraction:
    return Fraction(0) if n < 0 else Fraction(1, math.factorial(n))


def xy_closed_coeff(which: str, n: int) -> Fraction:
    """Closed form for ``[z^n] X`` or ``[z^n] Y`` (zero for n < 2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    tail = math.factorial(2 * n - 1) * _inv_factorial(n) * _inv_factorial(n - 2) if n else Fraction(0)
    if which == "Y":
        return tail / (6 if n % 2 == 0 else -6)
    if which == "X":
        lead = Fraction(math.comb(2 * n, n) * (n + 1), 2) - Fraction(2) ** (2 * n - 1)
        return (lead - tail / 6) * (1 if n % 2 else -1)
    raise ValueError(f"which must be 'X' or 'Y', not {which!r}")


def _bracket_alpha(order: int) -> TruncatedSeries:
    root = series_binomial_pow(4, Fraction(1, 2), order)
    return Fraction(1, 2) - root.inverse() * Fraction(1, 2)


def _bracket_beta(order: int) -> TruncatedSeries:
    z = TruncatedSeries.monomial(1, order)
    root = series_binomial_pow(4, Fraction(1, 2), order)
    one_4z = series_binomial_pow(4, 1, order)
    return z * 2 / one_4z - z * 4 / (root * (root + 1))


def p_series(kind, order: int = DEFAULT_ORDER, g=None, m=None) -> TruncatedSeries:
    """Generating series ``sum_d P(d, g, m) z^d`` of one coefficient family.

    The ``Pc`` series is ``-Z`` so that ``P_c(d) = -N_d``.
    """
    kind = GenFunKind(kind)
    if kind is GenFunKind.X:
        return xy_series(order)[0]
    if kind is GenFunKind.Y:
        return xy_series(order)[1]
    if g is None and m is None:
        z = _symbolic_z(order)
    else:
        z = z_series(g, m, order)
    if kind is GenFunKind.Z:
        return z
    if kind is GenFunKind.Pc:
        return -z
    if kind is GenFunKind.Palpha:
        return z * _bracket_alpha(order)
    if kind is GenFunKind.Pbeta:
        return z * _bracket_beta(order)
    x, y = xy_series(max(order, 2))
    if kind is GenFunKind.Pgamma:
        return z * x.truncate(order)
    return z * y.truncate(order)


def p_coeff(kind, d: int, g=None, m=None):
    """``[z^d]`` of :func:`p_series`."""
    return p_series(kind, d + 1, g, m)[d]


# ---------------------------------------------------------------------------
# Cross-checks
# ---------------------------------------------------------------------------

@dataclass
class SeriesCheck:
    name: str
    order: int
    mismatches: list[int] = field(default_factory=list)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return not self.mismatches


def _compare(name, lhs: TruncatedSeries, rhs: TruncatedSeries, notes="") -> SeriesCheck:
    n = min(lhs.order, rhs.order)
    bad = [k for k in range(n) if lhs[k] != rhs[k]]
    return SeriesCheck(name, n, bad, notes)


@dataclass
class FirstFormReport:
    """Agreement of the derivative-based forms with ``Z*X`` and ``Z*Y``.

    Each variant maps to a :class:`SeriesCheck`.  ``passed`` refers to the
    forms that follow from the K3 and fifth relations (``corrected`` keys);
    the printed variants are reported alongside.
    """

    g: Fraction
    order: int
    variants: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for k, c in self.variants.items() if k.endswith("corrected"))


def _derivative_forms(g, m, order, variant):
    pa = p_series("Palpha", order, g, m)
    pb = p_series("Pbeta", order, g, m)
    k5 = Fraction(5, 6) / (2 - g)
    k1 = Fraction(1, 6) / (2 - g)
    twelfth = Fraction(1, 12)
    if variant == "gamma/printed":
        return (pa.euler() - pa) * k5 + pb * ((g + 3) * (m + 3) * twelfth / (2 - g) + m * twelfth)
    if variant == "gamma/corrected":
        return (pa.euler() - pa) * k5 + pb * ((g + 3) * (m - 3) * twelfth / (2 - g) + m * twelfth)
    tail = (m - 3) * (g - 1) * twelfth / (2 - g)
    if variant == "delta0/printed":
        return (pa - pa.shift(1)) * k1 - pb * (1 / (12 * m) + tail)
    if variant == "delta0/derivative-inserted":
        return (pa - pa.euler()) * k1 - pb * (1 / (12 * m) + tail)
    if variant == "delta0/corrected":
        return (pa - pa.euler()) * k1 - pb * (m * twelfth + tail)
    raise ValueError(variant)


def pgamma_first_form_check(g: int, order: int = 8, m=None) -> FirstFormReport:
    """Compare the derivative forms of the conjectural series with ``Z*X``, ``Z*Y``.

    ``g`` must be a number other than 2.  Forms that are polynomial in ``m``
    are checked with ``m`` symbolic (unless ``m`` is given); the printed
    P_delta0 forms carry ``1/(12m)`` and are checked at m = 1..6 instead.
    """
    if g == 2:
        raise SingularParameterError("g = 2 is a pole of the derivative forms")
    if isinstance(g, Poly):
        raise SingularParameterError("the derivative forms need a numeric genus")
    g = as_rational(g)
    _, m_sym = _resolve(g, m)
    report = FirstFormReport(g, order)
    for variant in ("gamma/printed", "gamma/corrected", "delta0/corrected"):
        kind = "Pgamma" if variant.startswith("gamma") else "Pdelta0"
        lhs = _derivative_forms(g, m_sym, order, variant)
        report.variants[variant] = _compare(variant, lhs, p_series(kind, order, g, m_sym))
    m_values = [m] if m is not None and not isinstance(m, Poly) else range(1, 7)
    for variant in ("delta0/printed", "delta0/derivative-inserted"):
        bad = []
        for mv in m_values:
            mv = as_rational(mv)
            lhs = _derivative_forms(g, mv, order, variant)
            ref = p_series("Pdelta0", order, g, mv)
            bad.extend((mv, k) for k in range(order) if lhs[k] != ref[k])
        report.variants[variant] = SeriesCheck(variant, order, bad)
    return report


def multiplicativity_check(order: int = 12) -> SeriesCheck:
    """``Z_{g1+g2-1, m1+m2} = Z_{g1,m1} Z_{g2,m2}`` in Q[m1, g1, m2, g2][[z]]."""
    if order < 2:
        raise ValueError("order must be at least 2")
    gens = ("m1", "g1", "m2", "g2")
    m1, g1, m2, g2 = (Poly.var(v, gens) for v in gens)
    lhs = z_series(g1 + g2 - 1, m1 + m2, order, method="exp")
    rhs = z_series(g1, m1, order, method="exp") * z_series(g2, m2, order, method="exp")
    return _compare("multiplicativity of Z", lhs, rhs)
