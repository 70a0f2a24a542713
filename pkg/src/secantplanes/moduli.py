"""Secant-plane divisor classes on the moduli space of curves, and their slopes.

A class on the space of linear series is pushed to the moduli space along the
covering ``eta`` of degree ``N``.  In the basis ``lambda, delta_0`` (other
boundary classes and psi dropped):

* ``eta_* alpha``, ``eta_* beta`` and ``eta_* c`` are given by Khosla's formulas;
* ``gamma = 12 lambda - delta_0`` pulls back from the moduli space, so it
  contributes ``N (12 lambda - delta_0)``; likewise ``delta_0`` contributes
  ``N delta_0``.

Writing ``Sec = b_lambda lambda - b_0 delta_0 - b_1 delta_1 - b_2 delta_2 - ...``
the first two boundary coefficients follow from
``b_lambda - 12 b_0 + b_1 = 0`` and ``b_2 = 5/2 b_1 - b_lambda / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import rational_str
from .hypergeom import p_hyper


class ModuliDomainError(ValueError):
    """Parameters outside the range where a formula makes sense."""


def rho_zero_point(a: int, d: int) -> tuple[int, int, int]:
    """``(g, s, m)`` with ``rho = 0`` and ``r = 1``; ``a = 1`` gives canonical series and is excluded."""
    if a < 2 or d < 1:
        raise ModuliDomainError(f"need a >= 2 and d >= 1, got a={a}, d={d}")
    return 2 * a * d, 2 * d - 1, (2 * d - 1) * (a + 1)


# ---------------------------------------------------------------------------
# Covering degree and Gysin images
# ---------------------------------------------------------------------------

def covering_degree(g: int, s: int, m: int) -> Fraction:
    """``N = g! prod_{i=1}^s i! / prod_{i=0}^s (g-m+s+i)!``."""
    if g - m + s < 0:
        raise ModuliDomainError(f"g-m+s = {g - m + s} is negative")
    num = math.factorial(g) * math.prod(math.factorial(i) for i in range(1, s + 1))
    den = math.prod(math.factorial(g - m + s + i) for i in range(s + 1))
    return Fraction(num, den)


def xi(g: int, s: int, m: int) -> Fraction:
    den = g - m + 2 * s + 1
    if den == 0:
        raise ModuliDomainError("g-m+2s+1 vanishes")
    return 3 * (g - 1) + Fraction((s - 1) * (g + s + 1) * (3 * g - 2 * m + s - 3), den)


@dataclass(frozen=True)
class GysinImage:
    lambda_coeff: Fraction
    delta0_coeff: Fraction

    def __add__(self, other: GysinImage) -> GysinImage:
        return GysinImage(self.lambda_coeff + other.lambda_coeff,
                          self.delta0_coeff + other.delta0_coeff)

    def __mul__(self, c) -> GysinImage:
        return GysinImage(self.lambda_coeff * c, self.delta0_coeff * c)

    __rmul__ = __mul__


GYSIN_CLASSES = ("alpha", "beta", "c")


def gysin(which: str, g: int, s: int, m: int, n: Fraction | None = None) -> GysinImage:
    """``eta_*`` of ``alpha``, ``beta`` or ``c`` in the ``(lambda, delta_0)`` basis.

    ``n`` overrides the covering degree; pass ``1`` to work per sheet.
    """
    if which not in GYSIN_CLASSES:
        raise ValueError(f"unknown class {which!r}")
    if g in (1, 2):
        raise ModuliDomainError("the pushforward formulas are singular at g = 1, 2")
    g, s, m = int(g), int(s), int(m)
    n = covering_degree(g, s, m) if n is None else Fraction(n)
    q = Fraction(1, (g - 1) * (g - 2))
    if which == "alpha":
        return GysinImage(m * n * (g * m - 2 * g * g + 8 * m - 8 * g + 4) * q,
                          m * n * (2 * g * g - g * m + 3 * g - 4 * m - 2) * q / 6)
    if which == "beta":
        return GysinImage(m * n * Fraction(6, g - 1), -m * n * Fraction(1, 2 * (g - 1)))
    x = xi(g, s, m)
    return GysinImage(n * (-(g + 3) * x + 5 * s * (s + 2)) * q / 2,
                      n * ((g + 1) * x - 3 * s * (s + 2)) * q / 12)


def gysin_rho_zero(which: str, a: int, d: int, n: Fraction | None = None) -> GysinImage:
    """The same images written directly in ``(a, d)`` on the ``rho = 0``, ``r = 1`` locus."""
    g, s, m = rho_zero_point(a, d)
    n = covering_degree(g, s, m) if n is None else Fraction(n)
    den = (2 * a * d - 1) * (a * d - 1)
    if which == "alpha":
        lam = -n * (2 * d - 1) * (a + 1) * ((2 * a * a - 2 * a) * d * d + (a * a + a - 8) * d
                                           + (4 * a + 2)) / Fraction(den)
        dl0 = n * (2 * d - 1) * (a + 1) * ((2 * a * a - 2 * a) * d * d + (a * a - 4) * d
                                          + (2 * a + 1)) / Fraction(6 * den)
        return GysinImage(lam, dl0)
    if which == "beta":
        return GysinImage(6 * n * (2 * d - 1) * (a + 1) / Fraction(2 * a * d - 1),
                          -n * (2 * d - 1) * (a + 1) / Fraction(2 * (2 * a * d - 1)))
    if which == "c":
        den_c = (2 * d + a) * den
        lam = -n * (2 * d - 1) * ((2 * a ** 3 - 2 * a) * d ** 3 + (a ** 3 + 6 * a * a - a - 8) * d * d
                                  + (3 * a * a + 2 * a - 4) * d + a) / Fraction(den_c)
        dl0 = n * (2 * d - 1) * d * ((2 * a ** 3 - 2 * a) * d * d + (a ** 3 + 4 * a * a - a - 4) * d
                                     + (2 * a * a - 2)) / Fraction(6 * den_c)
        return GysinImage(lam, dl0)
    raise ValueError(f"unknown class {which!r}")


def gysin_specialization_check(a_max: int = 6, d_max: int = 10) -> list[tuple]:
    """``(a, d, class)`` triples where the general and specialized images disagree."""
    bad = []
    for a in range(2, a_max + 1):
        for d in range(1, d_max + 1):
            g, s, m = rho_zero_point(a, d)
            if g < 3:
                continue
            for which in GYSIN_CLASSES:
                if gysin(which, g, s, m) != gysin_rho_zero(which, a, d):
                    bad.append((a, d, which))
    return bad


# ---------------------------------------------------------------------------
# Divisor classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisorClass:
    a: int
    d: int
    b_lambda: Fraction
    b_0: Fraction
    b_1: Fraction
    b_2: Fraction
    per_sheet: bool = False

    def __post_init__(self):
        if self.b_lambda - 12 * self.b_0 + self.b_1 != 0:
            raise AssertionError("b_lambda - 12 b_0 + b_1 must vanish")
        if self.b_2 != Fraction(5, 2) * self.b_1 - self.b_lambda / 2:
            raise AssertionError("b_2 must equal 5/2 b_1 - b_lambda/2")

    @classmethod
    def from_leading(cls, a: int, d: int, b_lambda, b_0, per_sheet: bool = False) -> DivisorClass:
        b_1 = 12 * b_0 - b_lambda
        b_2 = Fraction(5, 2) * b_1 - Fraction(b_lambda) / 2
        return cls(a, d, Fraction(b_lambda), Fraction(b_0), b_1, b_2, per_sheet)

    @property
    def is_zero(self) -> bool:
        return self.b_lambda == 0 and self.b_0 == 0

    @property
    def slope(self) -> Fraction:
        if self.b_0 == 0:
            raise ModuliDomainError(f"b_0 vanishes for (a, d) = ({self.a}, {self.d})")
        return self.b_lambda / self.b_0

    def to_record(self) -> dict:
        g, s, m = rho_zero_point(self.a, self.d)
        return {"a": self.a, "d": self.d, "g": g, "s": s, "m": m,
                "b_lambda": rational_str(self.b_lambda), "b_0": rational_str(self.b_0),
                "b_1": rational_str(self.b_1), "b_2": rational_str(self.b_2),
                "slope": rational_str(self.slope) if self.b_0 else "N/A",
                "per_sheet": self.per_sheet}


COEFF_SOURCES = ("hypergeom", "relations", "series")


def _coefficients(source: str, d: int, g: int, m: int) -> dict[str, Fraction]:
    names = ("Palpha", "Pbeta", "Pgamma", "Pc", "Pdelta0")
    if source == "hypergeom":
        return {k: p_hyper(k, d, g, m) for k in names}
    if source == "relations":
        from .relations import solve_coefficients

        return solve_coefficients(d).evaluate(g=g, m=m)
    if source == "series":
        from .genfun import p_coeff

        return {k: p_coeff(k, d, g, m) for k in names}
    raise ValueError(f"source must be one of {COEFF_SOURCES}")


def sec_class(a: int, d: int, source: str = "hypergeom", per_sheet: bool = False) -> DivisorClass:
    """Class of the ``(a, d)`` secant-plane divisor on the moduli space.

    ``per_sheet=True`` divides by the covering degree, which leaves the slope
    unchanged and avoids enormous integers for large ``d``.
    """
    g, s, m = rho_zero_point(a, d)
    if g < 3:
        raise ModuliDomainError("genus must be at least 3")
    n = Fraction(1) if per_sheet else covering_degree(g, s, m)
    p = _coefficients(source, d, g, m)
    total = (p["Palpha"] * gysin("alpha", g, s, m, n) + p["Pbeta"] * gysin("beta", g, s, m, n)
             + p["Pc"] * gysin("c", g, s, m, n)
             + GysinImage(12 * n, -n) * p["Pgamma"] + GysinImage(Fraction(0), n) * p["Pdelta0"])
    return DivisorClass.from_leading(a, d, total.lambda_coeff, -total.delta0_coeff, per_sheet)


# ---------------------------------------------------------------------------
# Slopes and thresholds
# ---------------------------------------------------------------------------

THRESHOLD_LARGE_GENUS = Fraction(88828, 12870)


def brill_noether_slope(g: int) -> Fraction:
    return 6 + Fraction(12, g + 1)


def threshold_half_genus(g: int) -> Fraction:
    return 6 + Fraction(11, g // 2 + 1)


@dataclass(frozen=True)
class SlopeReport:
    a: int
    d: int
    g: int
    s: int
    m: int
    slope: Fraction
    bn_margin: Fraction
    half_genus_margin: Fraction
    large_genus_margin: Fraction | None

    @property
    def thresholds_hold(self) -> bool:
        ok = self.half_genus_margin <= 0
        if self.large_genus_margin is not None:
            ok = ok and self.large_genus_margin <= 0
        return ok

    def to_record(self) -> dict:
        return {"a": self.a, "d": self.d, "g": self.g, "s": self.s, "m": self.m,
                "slope": rational_str(self.slope), "bn_margin": rational_str(self.bn_margin),
                "half_genus_margin": rational_str(self.half_genus_margin),
                "large_genus_margin": (rational_str(self.large_genus_margin)
                                       if self.large_genus_margin is not None else "N/A"),
                "thresholds_hold": self.thresholds_hold}


def slope_report(a: int, d: int, source: str = "hypergeom") -> SlopeReport:
    g, s, m = rho_zero_point(a, d)
    slope = sec_class(a, d, source, per_sheet=True).slope
    large = slope - THRESHOLD_LARGE_GENUS if g >= 20 else None
    return SlopeReport(a, d, g, s, m, slope, slope - brill_noether_slope(g),
                       slope - threshold_half_genus(g), large)


@dataclass(frozen=True)
class TableRow:
    g: int
    d: int
    s: int
    m_printed: int
    bn_margin: Fraction
    half_genus_margin: Fraction
    large_genus_margin: Fraction | None

    @property
    def a(self) -> int:
        return self.g // (2 * self.d)


def _f(text: str) -> Fraction:
    return Fraction(text)


# Rows as printed.  The m column of the last two rows disagrees with rho = 0,
# which forces m = (2d-1)(a+1); the margins are those of the rho = 0 divisor.
SLOPE_TABLE = (
    TableRow(8, 2, 3, 9, _f("0"), _f("-13/15"), None),
    TableRow(12, 2, 3, 12, _f("693/12389"), _f("-3952/6671"), None),
    TableRow(16, 2, 3, 15, _f("756/13379"), _f("-3257/7083"), None),
    TableRow(20, 2, 3, 18, _f("1539/30247"), _f("-1632/4321"), _f("-7775369/27805635")),
    TableRow(12, 3, 5, 15, _f("308/6539"), _f("-2117/3521"), None),
    TableRow(18, 3, 5, 20, _f("32232/596239"), _f("-130031/313810"), None),
    TableRow(16, 4, 7, 16, _f("2520/46427"), _f("-11357/24579"), None),
    TableRow(20, 5, 9, 20, _f("2508/47159"), _f("-2529/6737"), _f("-12023068/43352595")),
)


@dataclass(frozen=True)
class TableCheck:
    row: TableRow
    report: SlopeReport

    @property
    def margins_match(self) -> bool:
        r, rep = self.row, self.report
        return (rep.bn_margin == r.bn_margin and rep.half_genus_margin == r.half_genus_margin
                and rep.large_genus_margin == r.large_genus_margin)

    @property
    def m_matches(self) -> bool:
        return self.row.m_printed == self.report.m

    def to_record(self) -> dict:
        rec = self.report.to_record()
        rec.update({"m_printed": self.row.m_printed, "margins_match": self.margins_match,
                    "m_matches": self.m_matches})
        return rec


def slope_table(source: str = "hypergeom") -> list[TableCheck]:
    return [TableCheck(row, slope_report(row.a, row.d, source)) for row in SLOPE_TABLE]


# ---------------------------------------------------------------------------
# Virtual slopes on the rho = 0 locus
# ---------------------------------------------------------------------------

def _poly_eval(coeffs: tuple, x) -> Fraction:
    """Evaluate ``sum coeffs[i] x**i`` (ascending coefficients)."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _scaled(k: int, desc: list[int]) -> tuple:
    return tuple(k * c for c in reversed(desc))


# a -> (numerator, denominator), ascending powers of d, leading scalar multiplied in
VIRTUAL_SLOPES: dict[int, tuple[tuple, tuple]] = {
    2: (_scaled(2, [96, 80, -110, -62, 5]), _scaled(1, [32, 8, -30, -8, 1])),
    3: (_scaled(3, [9216, 15552, 5240, -6372, -5218, -1067, 69]),
        _scaled(1, [4608, 6048, 772, -2780, -1609, -205, 21])),
    4: (_scaled(2, [25920, 45360, 24387, -6006, -12143, -5213, -790, 38]),
        _scaled(1, [8640, 12744, 4853, -2585, -3032, -1041, -105, 8])),
    5: (_scaled(2, [9830400, 18595840, 12571776, 958200, -3620196, -2433066, -734307, -89401, 3285]),
        _scaled(1, [3276800, 5488640, 3012992, -174328, -1038520, -575170, -145032, -12207, 720])),
}


def virtual_slope_closed_form(a: int) -> tuple[tuple, tuple]:
    """Numerator and denominator coefficient tuples (ascending in ``d``)."""
    if a not in VIRTUAL_SLOPES:
        raise ValueError(f"closed forms are tabulated for a in 2..5, not {a}")
    return VIRTUAL_SLOPES[a]


def virtual_slope_value(a: int, d) -> Fraction:
    num, den = virtual_slope_closed_form(a)
    return _poly_eval(num, d) / _poly_eval(den, d)


@dataclass(frozen=True)
class VirtualSlopeCheck:
    a: int
    d_max: int
    mismatches: tuple
    vanishing: tuple  # d where the whole class is zero

    @property
    def passed(self) -> bool:
        return not self.mismatches


def virtual_slope_check(a: int, d_max: int = 30, source: str = "hypergeom") -> VirtualSlopeCheck:
    """Compare the closed form with ``sec_class`` for ``d = 1..d_max``.

    The comparison is ``num(d) * b_0 == den(d) * b_lambda``, which is exact and
    also meaningful at ``d = 1`` where the class vanishes (both sides are 0).
    """
    num, den = virtual_slope_closed_form(a)
    bad, zero = [], []
    for d in range(1, d_max + 1):
        cls = sec_class(a, d, source, per_sheet=True)
        if cls.is_zero:
            zero.append(d)
        if _poly_eval(num, d) * cls.b_0 != _poly_eval(den, d) * cls.b_lambda:
            bad.append(d)
    return VirtualSlopeCheck(a, d_max, tuple(bad), tuple(zero))


# ---------------------------------------------------------------------------
# Asymptotics in d
# ---------------------------------------------------------------------------

def asymptotic_polys(a: int) -> tuple[int, int, int]:
    """``(S1, S2, S3)`` with slope ``(6 S1 d + S2 + O(1/d)) / (S1 d + S3 + O(1/d))``."""
    s1 = 256 * a**10 - 1024 * a**9 + 1280 * a**8 - 1280 * a**6 + 1024 * a**5 - 256 * a**4
    s2 = (384 * a**10 + 384 * a**9 - 13824 * a**7 + 768 * a**8 + 26496 * a**6 - 18048 * a**5
          + 3072 * a**4 + 768 * a**3)
    s3 = (64 * a**10 - 192 * a**9 - 2944 * a**7 + 1024 * a**8 + 3136 * a**6 - 448 * a**5
          - 1152 * a**4 + 512 * a**3)
    return s1, s2, s3


def bn_gap(a: int, d: int, source: str = "hypergeom") -> Fraction:
    """``b_lambda/b_0 - 6 - 12/(2ad+1)``."""
    return sec_class(a, d, source, per_sheet=True).slope - 6 - Fraction(12, 2 * a * d + 1)


@dataclass(frozen=True)
class AsymptoticReport:
    a: int
    d: int
    gap: Fraction
    normalized_gap: Fraction
    s_ratio_error: Fraction

    def within(self, lo=Fraction(95, 100), hi=Fraction(105, 100)) -> bool:
        return lo <= self.normalized_gap <= hi


def asymptotics(a: int, d: int = 1000, source: str = "hypergeom") -> AsymptoticReport:
    """Gap to the Brill-Noether slope at finite ``d``, scaled by ``ad(a+1)/3``.

    Also reports the relative error of ``(6 S1 d + S2)/(S1 d + S3)`` against the
    exact slope.
    """
    slope = sec_class(a, d, source, per_sheet=True).slope
    gap = slope - 6 - Fraction(12, 2 * a * d + 1)
    s1, s2, s3 = asymptotic_polys(a)
    approx = Fraction(6 * s1 * d + s2, s1 * d + s3)
    return AsymptoticReport(a, d, gap, gap * Fraction(a * d * (a + 1), 3),
                            abs(approx - slope) / slope)


def weierstrass_class(g: int) -> dict:
    """Coefficients of the Weierstrass divisor: ``-lambda + g(g+1)/2 psi - sum C(g-i+1, 2) delta_i``.

    Kept for reference only; the ``b_2`` relation is what enters the output.
    """
    out = {"lambda": -1, "psi": Fraction(g * (g + 1), 2)}
    for i in range(1, g):
        out[f"delta_{i}"] = -math.comb(g - i + 1, 2)
    return out
