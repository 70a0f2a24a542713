"""Exact arithmetic substrate: rationals, sparse polynomials, truncated series.

Rationals are :class:`fractions.Fraction`.  Polynomials are sparse maps from
exponent tuples to rationals over a fixed tuple of generator names; the
default generators are ``("m", "g")``, the degree and genus of a linear
series.  Truncated power series in ``z`` accept any coefficient type that
supports ``+``, ``-`` and ``*`` with integers and rationals, so the same
series code runs over ``Fraction`` and over :class:`Poly`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

BIVAR = ("m", "g")
DEFAULT_ORDER = 16


class ExactArithmeticError(ArithmeticError):
    """Raised for non-invertible divisions and inexact polynomial quotients."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Poly) and x.is_constant():
        return x.constant()
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_str(x: Number) -> str:
    """Serialize as ``"p/q"`` (the denominator is always written)."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


class Poly:
    """Sparse polynomial with rational coefficients.

    >>> m, g = Poly.var("m"), Poly.var("g")
    >>> str((m + 1) * (m - 1) - g)
    'm^2 - g - 1'
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Number] | None = None,
                 gens: Sequence[str] = BIVAR):
        self.gens = tuple(gens)
        n = len(self.gens)
        clean = {}
        for k, v in (terms or {}).items():
            if len(k) != n:
                raise ValueError(f"exponent {k} does not match generators {self.gens}")
            if v:
                clean[tuple(k)] = v if isinstance(v, Fraction) else Fraction(v)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, gens: tuple) -> Poly:
        p = object.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str, gens: Sequence[str] = BIVAR) -> Poly:
        gens = tuple(gens)
        exp = tuple(1 if v == name else 0 for v in gens)
        if sum(exp) != 1:
            raise ValueError(f"{name!r} is not one of {gens}")
        return cls._raw({exp: Fraction(1)}, gens)

    @classmethod
    def const(cls, c: Number, gens: Sequence[str] = BIVAR) -> Poly:
        gens = tuple(gens)
        c = as_rational(c)
        return cls._raw({(0,) * len(gens): c} if c else {}, gens)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.gens != self.gens:
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.gens)
        return None

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(out, self.gens)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -v for k, v in self.terms.items()}, self.gens)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({}, self.gens)
            return Poly._raw({k: v * other for k, v in self.terms.items()}, self.gens)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(k, 0) + v1 * v2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Poly._raw(out, self.gens)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            inv = 1 / Fraction(other)
            return self * inv
        if isinstance(other, Poly):
            if other.is_constant():
                return self / other.constant()
            return self.divexact(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.const(1, self.gens)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other, self.gens).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def coeff(self, **exps: int) -> Fraction:
        key = tuple(exps.get(v, 0) for v in self.gens)
        return self.terms.get(key, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.gens.index(name)
        return max((k[i] for k in self.terms), default=-1)

    def has_integer_coefficients(self) -> bool:
        return all(v.denominator == 1 for v in self.terms.values())

    def __call__(self, **values) -> Union[Fraction, Poly]:
        return self.evaluate(**values)

    def evaluate(self, **values) -> Union[Fraction, Poly]:
        """Substitute numbers (or polynomials) for some or all generators.

        Returns a Fraction when every generator is given a number.
        """
        unknown = set(values) - set(self.gens)
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        if all(v in values and not isinstance(values[v], Poly) for v in self.gens):
            vals = [as_rational(values[v]) for v in self.gens]
            total = Fraction(0)
            for k, c in self.terms.items():
                t = c
                for x, e in zip(vals, k):
                    if e:
                        t *= x ** e
                total += t
            return total
        return self.substitute(values)

    def substitute(self, values: Mapping[str, object],
                   gens: Sequence[str] | None = None) -> Poly:
        """Compose with a map ``generator -> number | Poly`` into ``gens``."""
        target = tuple(gens) if gens is not None else self.gens
        images = []
        for v in self.gens:
            if v in values:
                x = values[v]
                images.append(x if isinstance(x, Poly) else Poly.const(as_rational(x), target))
            else:
                images.append(Poly.var(v, target))
        out = Poly.const(0, target)
        cache: dict = {}
        for k, c in self.terms.items():
            t = Poly.const(c, target)
            for i, e in enumerate(k):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    t = t * cache[key]
            out = out + t
        return out

    def divexact(self, other: Poly) -> Poly:
        """Exact quotient; raises :class:`ExactArithmeticError` on a remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_k = max(other.terms)
        lead_c = other.terms[lead_k]
        rem = self
        quot: dict = {}
        while rem.terms:
            k = max(rem.terms)
            shift = tuple(a - b for a, b in zip(k, lead_k))
            if min(shift) < 0:
                raise ExactArithmeticError(f"{other} does not divide {self}")
            c = rem.terms[k] / lead_c
            quot[shift] = quot.get(shift, 0) + c
            rem = rem - Poly._raw({shift: c}, self.gens) * other
        return Poly(quot, self.gens)

    # -- serialization ----------------------------------------------------------
    def to_records(self) -> list[dict]:
        """List of ``{<gen>_exp: int, coeff: "p/q"}`` records in sorted order."""
        out = []
        for k in sorted(self.terms, reverse=True):
            rec = {f"{v}_exp": e for v, e in zip(self.gens, k)}
            rec["coeff"] = rational_str(self.terms[k])
            out.append(rec)
        return out

    @classmethod
    def from_records(cls, records: Iterable[Mapping], gens: Sequence[str] = BIVAR) -> Poly:
        gens = tuple(gens)
        terms = {}
        for rec in records:
            k = tuple(int(rec[f"{v}_exp"]) for v in gens)
            terms[k] = terms.get(k, 0) + Fraction(rec["coeff"])
        return cls(terms, gens)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for k in sorted(self.terms, key=lambda k: (sum(k), k), reverse=True):
            c = self.terms[k]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.gens, k) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({self}; gens={self.gens})"


def bivar_gens() -> tuple[Poly, Poly]:
    """The generators ``(m, g)`` of the bivariate ring."""
    return Poly.var("m"), Poly.var("g")


def to_poly(x, gens: Sequence[str] = BIVAR) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(as_rational(x), gens)


def is_zero(x) -> bool:
    return not x


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

def _inverse_constant(c):
    """Inverse of a series constant term, or raise if not a unit."""
    if isinstance(c, Poly):
        if not c.is_constant() or c.is_zero():
            raise ExactArithmeticError(
                f"constant term {c} is not invertible in the coefficient ring")
        return 1 / c.constant()
    if not c:
        raise ExactArithmeticError("constant term 0 is not invertible")
    return 1 / Fraction(c)


class TruncatedSeries:
    """A power series in ``z`` known modulo ``z**order``.

    ``coeffs[n]`` is the coefficient of ``z**n``; ``order == len(coeffs)``.
    Binary operations truncate to the smaller of the two orders.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(
            Fraction(c) if isinstance(c, int) else c for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        if order < 1:
            raise ValueError("order must be at least 1")
        return cls([c] + [0] * (order - 1))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return cls.constant(1, order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return cls.constant(0, order)

    @classmethod
    def monomial(cls, n: int, order: int = DEFAULT_ORDER, c=1) -> TruncatedSeries:
        coeffs = [0] * order
        if n < order:
            coeffs[n] = c
        return cls(coeffs)

    def __getitem__(self, n: int):
        if n < 0:
            return Fraction(0)
        if n >= self.order:
            raise IndexError(f"coefficient z^{n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return self.order

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return TruncatedSeries(self.coeffs[:order])

    def _lift(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return TruncatedSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries(self.coeffs[i] + o.coeffs[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return TruncatedSeries(c * other for c in self.coeffs)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = 0
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    bj = b[k - i]
                    if bj:
                        acc = acc + ai * bj
            out.append(acc)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> TruncatedSeries:
        inv0 = _inverse_constant(self.coeffs[0])
        a = self.coeffs
        out = [inv0 * 1]
        for k in range(1, self.order):
            acc = 0
            for i in range(1, k + 1):
                if a[i]:
                    acc = acc + a[i] * out[k - i]
            out.append(-(acc * inv0))
        return TruncatedSeries(out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Poly):
            return self * _inverse_constant(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.truncate(n) * other.truncate(n).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> TruncatedSeries:
        if not isinstance(n, int):
            raise TypeError("series powers must be integers; use series_binomial_pow")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = TruncatedSeries.one(self.order)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by ``z**k`` (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("use lower() to divide by powers of z")
        return TruncatedSeries(([0] * k + list(self.coeffs))[: self.order])

    def lower(self, k: int) -> TruncatedSeries:
        """Divide by ``z**k``; the first k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ExactArithmeticError(f"series is not divisible by z^{k}")
        return TruncatedSeries(self.coeffs[k:])

    def derive(self) -> TruncatedSeries:
        if self.order <= 1:
            return TruncatedSeries([0])
        return TruncatedSeries(c * n for n, c in enumerate(self.coeffs) if n)

    def euler(self) -> TruncatedSeries:
        """``z * d/dz``, keeping the order."""
        return TruncatedSeries(c * n for n, c in enumerate(self.coeffs))

    def exp(self) -> TruncatedSeries:
        return series_exp(self)

    def map(self, f) -> TruncatedSeries:
        return TruncatedSeries(f(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{body}])"

    def to_records(self) -> list[dict]:
        recs = []
        for n, c in enumerate(self.coeffs):
            if isinstance(c, Poly):
                recs.append({"exponent": n, "coefficient": c.to_records()})
            else:
                recs.append({"exponent": n, "coefficient": rational_str(c)})
        return recs


def generalized_binomial(q, n: int):
    """``q choose n`` for rational or polynomial ``q``."""
    acc = Fraction(1)
    for k in range(n):
        acc = acc * (q - k)
    return acc / math.factorial(n)


def series_binomial_pow(c: int, q, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Expansion of ``(1 + c z)**q`` to the given order.

    ``q`` may be a rational or a :class:`Poly`; coefficients are the generalized
    binomials ``(q choose n) c**n``.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if not isinstance(q, Poly):
        q = as_rational(q)
    coeffs = []
    term = Fraction(1)
    for n in range(order):
        coeffs.append(term)
        term = term * (q - n) * c / (n + 1)
    return TruncatedSeries(coeffs)


def series_arith(lhs: TruncatedSeries, rhs: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    if op == "sub":
        return lhs - rhs
    raise ValueError(f"unknown series operation {op!r}")


def series_exp(arg: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential; the argument must have zero constant term."""
    a = arg.coeffs
    if a[0]:
        raise ExactArithmeticError("series_exp needs a vanishing constant term")
    # e' = a' e  =>  n e_n = sum_{k=1}^{n} k a_k e_{n-k}
    e = [Fraction(1)]
    for n in range(1, arg.order):
        acc = 0
        for k in range(1, n + 1):
            if a[k]:
                acc = acc + a[k] * k * e[n - k]
        e.append(acc * Fraction(1, n))
    return TruncatedSeries(e)


def series_log(arg: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1."""
    if arg.coeffs[0] != 1:
        raise ExactArithmeticError("series_log needs constant term 1")
    d = arg.derive() / arg.truncate(arg.order - 1)
    return TruncatedSeries([0] + [c * Fraction(1, n + 1) for n, c in enumerate(d.coeffs)])


def series_derive(arg: TruncatedSeries) -> TruncatedSeries:
    return arg.derive()


def sqrt_1_plus_4z(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return series_binomial_pow(4, Fraction(1, 2), order)


# ---------------------------------------------------------------------------
# Brill-Noether and secant-plane invariants
# ---------------------------------------------------------------------------

def rho(g: int, s: int, m: int) -> int:
    """Brill-Noether number of a ``g^s_m`` on a genus-g curve."""
    return g - (s + 1) * (g - m + s)


def mu(d: int, r: int, s: int) -> int:
    """Expected dimension of d-secant (d-r-1)-planes to a fixed ``g^s``."""
    return d - r * (s + 1 - d + r)


@dataclass(frozen=True)
class ProblemContext:
    d: int
    r: int
    s: int
    g: int
    m: int
    a: int | None = None

    def __post_init__(self):
        for name in ("d", "r", "s", "m"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.g < 0:
            raise ValueError("g must be nonnegative")
        if self.r == 1 and self.mu == -1 and self.s != 2 * self.d - 1:
            raise ValueError("r=1 with mu=-1 forces s = 2d-1")
        if self.a is not None:
            if self.a < 2:
                raise ValueError("the rho=0 parameter a must be at least 2")
            if (self.g, self.m) != (self.a * (self.s + 1), self.s * (self.a + 1)):
                raise ValueError("a is set but (g, m) is not (a(s+1), s(a+1))")

    @classmethod
    def rho_zero(cls, a: int, d: int) -> ProblemContext:
        """The r=1, rho=0, mu=-1 point: g = 2ad, s = 2d-1, m = (2d-1)(a+1)."""
        s = 2 * d - 1
        return cls(d=d, r=1, s=s, g=2 * a * d, m=s * (a + 1), a=a)

    @property
    def rho(self) -> int:
        return rho(self.g, self.s, self.m)

    @property
    def mu(self) -> int:
        return mu(self.d, self.r, self.s)
