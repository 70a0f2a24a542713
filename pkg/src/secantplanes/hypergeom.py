"""Terminating 3F2 series at unit argument and the hypergeometric coefficient formulas.

Every formula is evaluated at integer ``(g, m)`` only; factorials of negative
arguments are refused rather than continued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import as_rational


class HypergeometricDomainError(ValueError):
    """A factorial argument is negative or a lower Pochhammer vanishes."""


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+k-1)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = as_rational(x)
    acc = Fraction(1)
    for i in range(k):
        acc *= x + i
    return acc


def _nonpositive_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class HyperParams:
    upper: tuple
    lower: tuple

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(as_rational(x) for x in self.upper))
        object.__setattr__(self, "lower", tuple(as_rational(x) for x in self.lower))
        if len(self.upper) != 3 or len(self.lower) != 2:
            raise ValueError("a 3F2 needs three upper and two lower parameters")
        if self.length is None:
            raise HypergeometricDomainError(
                f"no upper parameter of {self.upper} is a nonpositive integer")

    @property
    def length(self) -> int | None:
        """Index of the last possibly nonzero term."""
        ks = [-int(a) for a in self.upper if _nonpositive_int(a)]
        return min(ks) if ks else None


def f32_unit(upper: Sequence, lower: Sequence) -> Fraction:
    """``3F2[upper; lower | 1]`` for a terminating series, exactly."""
    params = HyperParams(tuple(upper), tuple(lower))
    (a1, a2, a3), (b1, b2) = params.upper, params.lower
    total = Fraction(0)
    term = Fraction(1)
    for k in range(params.length + 1):
        if k:
            den = (b1 + k - 1) * (b2 + k - 1) * k
            if den == 0:
                raise HypergeometricDomainError(
                    f"lower Pochhammer vanishes at k={k} for lower parameters {params.lower}")
            term = term * (a1 + k - 1) * (a2 + k - 1) * (a3 + k - 1) / den
        total += term
    return total


def _fact(n, label: str) -> int:
    if isinstance(n, Fraction):
        if n.denominator != 1:
            raise HypergeometricDomainError(f"factorial argument {label} = {n} is not an integer")
        n = int(n)
    if n < 0:
        raise HypergeometricDomainError(f"factorial argument {label} = {n} is negative")
    return math.factorial(n)


def _summand(coef, numer: dict, denom: dict, upper, lower) -> Fraction:
    """``coef * prod(numer!) / prod(denom!) * 3F2[upper; lower]``."""
    value = Fraction(coef)
    for label, n in numer.items():
        value *= _fact(n, label)
    for label, n in denom.items():
        value /= _fact(n, label)
    if value == 0:
        return value
    return value * f32_unit(upper, lower)


PHYPER_KINDS = ("Pc", "Palpha", "Pbeta", "Pgamma", "Pdelta0")


def p_hyper(which: str, d: int, g: int, m: int) -> Fraction:
    """Tautological coefficient ``P(d, g, m)`` (r=1) from its 3F2 expression."""
    if which not in PHYPER_KINDS:
        raise ValueError(f"unknown coefficient {which!r}")
    if d < 1:
        raise ValueError("d must be at least 1")
    if which in ("Pgamma", "Pdelta0") and d == 1:
        return Fraction(0)
    g = Fraction(g)
    m = Fraction(m)
    half = Fraction(1, 2)

    a1 = -g * half + m * half + 1 - d
    a_m3 = -g * half + (m + 3) * half - d
    a_m1 = -g * half + (m + 1) * half - d
    low_g1 = (g + 1) * half - d
    low_g2 = g * half + 1 - d
    low_g0 = g * half - d
    low_g3 = (g + 3) * half - d

    if which in ("Pc", "Palpha"):
        first = _summand(
            1,
            {"g": g, "2g-2-m": 2 * g - 2 - m},
            {"g-2d": g - 2 * d, "d": d, "2g-2-m+d": 2 * g - 2 - m + d},
            (a1, a_m3, -d), (low_g1, low_g2))
        if which == "Pc":
            return -first
        second = _summand(
            Fraction(1, 2),
            {"g-1": g - 1, "2g-2-m": 2 * g - 2 - m},
            {"g-2d-1": g - 2 * d - 1, "d": d, "2g-2-m+d": 2 * g - 2 - m + d},
            (a1, a_m1, -d), (low_g1, low_g0))
        return first / 2 - second

    if which == "Pbeta":
        first = _summand(
            2,
            {"g-2": g - 2, "2g-2-m": 2 * g - 2 - m},
            {"g-2d": g - 2 * d, "d-1": d - 1, "2g-3-m+d": 2 * g - 3 - m + d},
            (a1, a_m3, 1 - d), (low_g1, low_g2))
        second = _summand(
            2,
            {"g-1": g - 1, "2g-1-m": 2 * g - 1 - m},
            {"g+1-2d": g + 1 - 2 * d, "d-1": d - 1, "2g-2-m+d": 2 * g - 2 - m + d},
            (a1, a_m3, 1 - d), (low_g2, low_g3))
        return first - second

    # P_gamma and P_delta0 share their four hypergeometric factors
    weights = {
        "Pgamma": (Fraction(8, 3), Fraction(-7, 12), Fraction(3), Fraction(7, 12)),
        "Pdelta0": (Fraction(8, 3), Fraction(-1, 12), Fraction(1), Fraction(1, 12)),
    }[which]
    total = Fraction(0)
    if d >= 3:
        total += _summand(
            weights[0],
            {"g-5": g - 5, "2g-1-m": 2 * g - 1 - m},
            {"g+1-2d": g + 1 - 2 * d, "d-3": d - 3, "2g-m+d-4": 2 * g - m + d - 4},
            (a1, a_m3, 3 - d), (low_g2, low_g3))
    total += _summand(
        weights[1],
        {"g-2": g - 2, "2g-1-m": 2 * g - 1 - m},
        {"g-2d": g - 2 * d, "d-1": d - 1, "2g-2-m+d": 2 * g - 2 - m + d},
        (a1, a_m1, 1 - d), (low_g1, low_g2))
    total += _summand(
        weights[2],
        {"g-5": g - 5, "2g-1-m": 2 * g - 1 - m},
        {"g-1-2d": g - 1 - 2 * d, "d-2": d - 2, "2g-3-m+d": 2 * g - 3 - m + d},
        (-g * half + m * half - d, a_m1, 2 - d), (low_g1, low_g0))
    total += _summand(
        weights[3],
        {"g-5": g - 5, "2g-1-m": 2 * g - 1 - m},
        {"g-3-2d": g - 3 - 2 * d, "d-1": d - 1, "2g-2-m+d": 2 * g - 2 - m + d},
        (-(g + 1) * half + m * half - d, -g * half - 1 + m * half - d, 1 - d),
        (g * half - 1 - d, (g - 1) * half - d))
    return total


def _rho_zero_point(a: int, d: int) -> tuple[int, int]:
    if a < 2 or d < 1:
        raise ValueError("need a >= 2 and d >= 1")
    return 2 * a * d, (2 * d - 1) * (a + 1)


def pc_rho_zero(a: int, d: int) -> Fraction:
    """``P_c`` on the Brill-Noether-general locus ``g = 2ad, m = (2d-1)(a+1)``."""
    _rho_zero_point(a, d)
    f = math.factorial
    pref = Fraction(f(2 * a * d) * f(2 * a * d - 2 * d + a - 1),
                    f(2 * a * d - 2 * d) * f(d) * f(2 * a * d - d + a - 1))
    series = f32_unit(
        (Fraction(1 - a, 2), Fraction(2 - a, 2), -d),
        (a * d + Fraction(1, 2) - d, a * d + 1 - d))
    return -pref * series


def q_terms(a: int, d: int) -> list[Fraction]:
    """Summands of the alternating sum ``Q(a, d)``, indexed by ``i``."""
    _rho_zero_point(a, d)
    f = math.factorial
    n = (2 * a - 2) * d
    terms = []
    for i in range((a - 1) // 2 + 1):
        if i > d:
            # falling factorial d!/(d-i)! vanishes
            terms.append(Fraction(0))
            continue
        t = Fraction(f(n + a - 1), f(n + 2 * i)) * Fraction(f(d), f(d - i)) \
            * Fraction(f(a - 1), f(a - 1 - 2 * i)) / f(i)
        terms.append(-t if i % 2 else t)
    return terms


def q_sum(a: int, d: int) -> Fraction:
    return sum(q_terms(a, d), Fraction(0))


@dataclass(frozen=True)
class NonemptyReport:
    a: int
    d: int
    pc: Fraction
    q: Fraction
    factorization_ok: bool
    decreasing_ok: bool
    positive_ok: bool

    @property
    def passed(self) -> bool:
        return self.factorization_ok and self.decreasing_ok and self.positive_ok

    def to_record(self) -> dict:
        return {"a": self.a, "d": self.d, "pc": _fs(self.pc), "q": _fs(self.q),
                "factorization": self.factorization_ok, "decreasing": self.decreasing_ok,
                "positive": self.positive_ok, "pass": self.passed}


def nonempty_check(a: int, d: int) -> NonemptyReport:
    """Check ``-P_c = (2ad)!/((2ad-d+a-1)! d!) Q``, decreasing summands and ``Q > 0``.

    Summands that vanish because ``i > d`` are skipped in the decrease test:
    every term past the first zero is zero as well.
    """
    f = math.factorial
    pc = pc_rho_zero(a, d)
    terms = q_terms(a, d)
    q = sum(terms, Fraction(0))
    scale = Fraction(f(2 * a * d), f(2 * a * d - d + a - 1) * f(d))
    nonzero = [abs(t) for t in terms if t != 0]
    decreasing = all(x > y for x, y in zip(nonzero, nonzero[1:]))
    return NonemptyReport(a, d, pc, q, -pc == scale * q, decreasing, q > 0 and pc < 0)


def _fs(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def grid_report(a_values=range(2, 7), d_values=range(1, 9)) -> list[dict]:
    """Compare every hypergeometric coefficient with its series coefficient on the rho=0 grid."""
    from .genfun import p_coeff

    records = []
    for a in a_values:
        for d in d_values:
            g, m = _rho_zero_point(a, d)
            for which in PHYPER_KINDS:
                value = p_hyper(which, d, g, m)
                oracle = p_coeff(which, d, g, m)
                records.append({"a": a, "d": d, "which": which, "value": _fs(value),
                                "oracle": _fs(oracle), "pass": value == oracle})
    return records
