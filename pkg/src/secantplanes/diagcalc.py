"""Diagonal calculus on Cartesian powers of a curve, used as an independent oracle.

On ``X^d`` put ``y_1 = l_1`` and ``y_j = l_j - sum_{i<j} Delta_{ij}``.  The
d-secant count is ``deg h_d(y_1, ..., y_d) / d!`` where ``h_d`` is the complete
homogeneous symmetric polynomial.  Over a one-parameter family of smooth curves
the same recipe with ``h_{d+1}`` on the relative power gives the coefficients of
``alpha = pi_*(l^2)``, ``beta = pi_*(l.omega)`` and ``gamma = pi_*(omega^2)``.

Reduction rules:

* ``Delta_{ij}`` restricts to the locus ``x_i = x_j``; we track such
  identifications with a union-find structure and move ``l`` and ``omega``
  classes onto the component representative (the smallest vertex).
* a diagonal whose endpoints are already identified (a repeated edge or the
  closing edge of a cycle) is a self-intersection: ``Delta^2 = -omega.Delta``.
  On a fixed curve ``omega`` is ``2g-2`` times a point.
* on a fixed curve ``l_j . Delta_{ij} = m pt``.

Two implementations are provided: an explicit expansion into monomials followed
by reduction (``porteous_expand``/``reduce``), and a transfer-matrix recursion
over vertex blocks (``fast_evaluate``) that reaches larger ``d``.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from .exact import BIVAR, Poly, bivar_gens

MODES = ("fixed", "family")
DEFAULT_BOUNDS = {"fixed": 6, "family": 4}


class OracleBoundError(ValueError):
    """Requested size exceeds the configured desk-scale bound."""


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# ---------------------------------------------------------------------------
# Monomials and expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalMonomial:
    """A product of diagonals and point-supported classes, with a coefficient.

    ``edges`` is a sorted tuple of pairs ``(i, j)`` with ``i < j``, repeated
    according to multiplicity.  The three exponent maps are sorted tuples of
    ``(vertex, exponent)`` with positive exponents.
    """

    edges: tuple = ()
    l_exponents: tuple = ()
    omega_exponents: tuple = ()
    pt_exponents: tuple = ()
    coefficient: object = Fraction(1)

    @property
    def key(self) -> tuple:
        return (self.edges, self.l_exponents, self.omega_exponents, self.pt_exponents)

    @property
    def degree(self) -> int:
        return (len(self.edges) + sum(e for _, e in self.l_exponents)
                + sum(e for _, e in self.omega_exponents)
                + sum(e for _, e in self.pt_exponents))

    def to_record(self) -> dict:
        coeff = self.coefficient
        return {
            "edges": [list(e) for e in self.edges],
            "l": dict(self.l_exponents),
            "omega": dict(self.omega_exponents),
            "pt": dict(self.pt_exponents),
            "coeff": coeff.to_records() if isinstance(coeff, Poly)
            else f"{coeff.numerator}/{coeff.denominator}",
        }

    def __str__(self) -> str:
        parts = [f"D{i}{j}" for i, j in self.edges]
        parts += [f"l{v}^{e}" if e > 1 else f"l{v}" for v, e in self.l_exponents]
        parts += [f"w{v}^{e}" if e > 1 else f"w{v}" for v, e in self.omega_exponents]
        parts += [f"pt{v}" for v, e in self.pt_exponents for _ in range(e)]
        return f"({self.coefficient})*" + ("*".join(parts) or "1")


def _exp_tuple(counts: dict) -> tuple:
    return tuple(sorted((v, e) for v, e in counts.items() if e))


class ClassExpression:
    """A linear combination of :class:`DiagonalMonomial`, merged by structure."""

    def __init__(self, terms: Iterable[DiagonalMonomial] = ()):
        self._terms: dict = {}
        for t in terms:
            self.add(t)

    def add(self, mono: DiagonalMonomial) -> None:
        k = mono.key
        c = self._terms.get(k, 0) + mono.coefficient
        if c == 0:
            self._terms.pop(k, None)
        else:
            self._terms[k] = c

    @property
    def terms(self) -> list[DiagonalMonomial]:
        return [DiagonalMonomial(*k, coefficient=c) for k, c in sorted(self._terms.items(),
                                                                         key=lambda kv: kv[0])]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[DiagonalMonomial]:
        return iter(self.terms)

    def to_records(self) -> list[dict]:
        return [t.to_record() for t in self.terms]


# ---------------------------------------------------------------------------
# Expansion of the complete homogeneous sum
# ---------------------------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _power_terms(j: int, k: int, lcap: int) -> list[tuple]:
    """Terms of ``y_j**k`` as ``(coeff, l_exp, edge tuple)``."""
    out = []
    for a in range(min(k, lcap) + 1):
        rest = k - a
        base = Fraction(math.factorial(k), math.factorial(a))
        for bs in _compositions(rest, j - 1) if j > 1 else ([()] if rest == 0 else []):
            c = base
            edges = []
            for i, b in enumerate(bs, start=1):
                c /= math.factorial(b)
                edges.extend([(i, j)] * b)
            if rest % 2:
                c = -c
            out.append((c, a, tuple(edges)))
    return out


def porteous_expand(d: int, mode: str = "fixed", bound: int | None = None) -> ClassExpression:
    """Expand ``h_D(y_1, ..., y_d)`` (``D = d`` fixed, ``d + 1`` family) into monomials."""
    _check_mode(mode)
    if d < 1:
        raise ValueError("d must be at least 1")
    bound = DEFAULT_BOUNDS[mode] if bound is None else bound
    if d > bound:
        raise OracleBoundError(
            f"d={d} exceeds the {mode} expansion bound {bound}; "
            f"about {expansion_size_estimate(d, mode)} raw monomials")
    total = d if mode == "fixed" else d + 1
    lcap = 1 if mode == "fixed" else 2
    expr = ClassExpression()
    tables = {(j, k): _power_terms(j, k, lcap) for j in range(1, d + 1) for k in range(total + 1)}
    for comp in _compositions(total, d):
        factors = [tables[(j, k)] for j, k in enumerate(comp, start=1)]
        for choice in product(*factors):
            c = Fraction(1)
            edges = []
            ls = {}
            for j, (cj, a, es) in enumerate(choice, start=1):
                c *= cj
                edges.extend(es)
                if a:
                    ls[j] = a
            expr.add(DiagonalMonomial(tuple(sorted(edges)), _exp_tuple(ls), (), (), c))
    return expr


def expansion_size_estimate(d: int, mode: str) -> int:
    """Number of raw monomials visited by :func:`porteous_expand`."""
    total = d if mode == "fixed" else d + 1
    lcap = 1 if mode == "fixed" else 2

    @lru_cache(maxsize=None)
    def count(j: int, k: int) -> int:
        return sum(math.comb(k - a + j - 2, j - 2) if j > 1 else int(k == a)
                   for a in range(min(k, lcap) + 1))

    return sum(math.prod(count(j, k) for j, k in enumerate(comp, start=1))
               for comp in _compositions(total, d))


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> int:
        rx, ry = self.find(x), self.find(y)
        lo, hi = min(rx, ry), max(rx, ry)
        self.parent[hi] = lo
        return lo


def reduce_monomial(mono: DiagonalMonomial, mode: str, rng: random.Random | None = None
                    ) -> DiagonalMonomial:
    """Normal form of a single monomial (see module docstring for the rules)."""
    _check_mode(mode)
    m, g = bivar_gens()
    edges = list(mono.edges)
    if rng is not None:
        rng.shuffle(edges)
    uf = _UnionFind()
    forest = []
    cycles = []
    for i, j in edges:
        ri, rj = uf.find(i), uf.find(j)
        if ri == rj:
            cycles.append(i)
        else:
            uf.union(i, j)
            forest.append((i, j))
    # re-attach every surviving diagonal and class to current representatives
    forest = tuple(sorted(forest))
    ls: dict = defaultdict(int)
    ws: dict = defaultdict(int)
    pts: dict = defaultdict(int)
    coeff = mono.coefficient
    for v, e in mono.l_exponents:
        ls[uf.find(v)] += e
    for v, e in mono.omega_exponents:
        ws[uf.find(v)] += e
    for v, e in mono.pt_exponents:
        pts[uf.find(v)] += e
    merged = {uf.find(v) for edge in forest for v in edge}
    if mode == "family":
        for v in cycles:
            ws[uf.find(v)] += 1
        coeff = coeff * (-1) ** len(cycles)
    else:
        two_g_2 = 2 * g - 2
        for v in cycles:
            pts[uf.find(v)] += 1
        if cycles:
            coeff = (-two_g_2) ** len(cycles) * coeff
        # l_j . Delta_{ij} = m pt on a merged component
        for v in list(ls):
            if v in merged:
                coeff = m ** ls[v] * coeff
                pts[v] += ls.pop(v)
    return DiagonalMonomial(forest, _exp_tuple(ls), _exp_tuple(ws), _exp_tuple(pts), coeff)


def reduce(expr: ClassExpression, mode: str = "fixed", seed: int | None = None) -> ClassExpression:
    """Reduce every monomial; ``seed`` shuffles the edge processing order."""
    rng = random.Random(seed) if seed is not None else None
    out = ClassExpression()
    for mono in expr:
        out.add(reduce_monomial(mono, mode, rng))
    return out


def _components(mono: DiagonalMonomial, d: int) -> dict:
    uf = _UnionFind()
    for v in range(1, d + 1):
        uf.find(v)
    for i, j in mono.edges:
        uf.union(i, j)
    comps: dict = defaultdict(lambda: [0, 0, 0])  # l, omega, pt
    for v in range(1, d + 1):
        comps[uf.find(v)]
    for idx, exps in enumerate((mono.l_exponents, mono.omega_exponents, mono.pt_exponents)):
        for v, e in exps:
            comps[uf.find(v)][idx] += e
    return comps


def _integrate_fixed(mono: DiagonalMonomial, d: int):
    m, g = bivar_gens()
    value = mono.coefficient
    for l, w, p in _components(mono, d).values():
        if l + w + p != 1:
            return 0
        if l:
            value = value * m
        elif w:
            value = value * (2 * g - 2)
    return value


def _integrate_family(mono: DiagonalMonomial, d: int) -> tuple:
    """Contribution to ``(alpha, beta, gamma)`` coefficients."""
    m, g = bivar_gens()
    value = mono.coefficient
    target = None
    for l, w, p in _components(mono, d).values():
        if p:
            raise ValueError("point classes do not occur in family mode")
        deg = l + w
        if deg == 1:
            value = value * (m if l else 2 * g - 2)
        elif deg == 2 and target is None:
            target = {2: 0, 1: 1, 0: 2}[l]
        else:
            return (0, 0, 0)
    if target is None:
        return (0, 0, 0)
    out = [0, 0, 0]
    out[target] = value
    return tuple(out)


def evaluate_expression(expr: ClassExpression, d: int, mode: str):
    """Integrate a reduced expression: a Poly (fixed) or three Polys (family)."""
    if mode == "fixed":
        total = Poly(gens=BIVAR)
        for mono in expr:
            total = total + _integrate_fixed(mono, d)
        return total
    acc = [Poly(gens=BIVAR) for _ in range(3)]
    for mono in expr:
        for k, v in enumerate(_integrate_family(mono, d)):
            if v != 0:
                acc[k] = acc[k] + v
    return tuple(acc)


def evaluate_fixed(d: int, bound: int | None = None, seed: int | None = None) -> Poly:
    """``N_d(g, m)`` as a polynomial, by explicit expansion and reduction."""
    expr = reduce(porteous_expand(d, "fixed", bound), "fixed", seed)
    return evaluate_expression(expr, d, "fixed") / math.factorial(d)


def evaluate_family(d: int, bound: int | None = None, seed: int | None = None
                    ) -> tuple[Poly, Poly, Poly]:
    """``(P_alpha, P_beta, P_gamma)(d)`` by explicit expansion and reduction."""
    expr = reduce(porteous_expand(d, "family", bound), "family", seed)
    f = math.factorial(d)
    return tuple(p / f for p in evaluate_expression(expr, d, "family"))


# ---------------------------------------------------------------------------
# Transfer-matrix recursion over blocks
# ---------------------------------------------------------------------------

def _block_transitions(blocks: tuple, k: int, lcap: int, maxdeg: int):
    """Add one vertex whose factor is ``y_j**k`` to a state of blocks.

    A block is ``(size, l, omega)``.  Expanding ``y_j**k`` and grouping the
    diagonals ``Delta_{ij}`` by the block of ``i`` gives, for ``t_B`` edges into
    block ``B``, a weight ``|B|**t_B / t_B!``.  The first edge into a block
    merges it with the new vertex, the rest close cycles and each add
    ``+omega`` (sign of ``-Delta`` times sign of the square rule).
    """
    nb = len(blocks)
    for a in range(min(k, lcap) + 1):
        rest = k - a
        for ts in (_compositions(rest, nb) if nb else ([()] if rest == 0 else [])):
            w = Fraction(math.factorial(k), math.factorial(a))
            size, l, om = 1, a, 0
            kept = []
            sign = 1
            for blk, t in zip(blocks, ts):
                if t == 0:
                    kept.append(blk)
                    continue
                bs, bl, bw = blk
                w = w * Fraction(bs ** t, math.factorial(t))
                sign = -sign  # the merging edge keeps its minus sign
                size += bs
                l += bl
                om += bw + (t - 1)
            if l + om > maxdeg:
                continue
            new = tuple(sorted(kept + [(size, l, om)]))
            yield new, w * sign


def fast_evaluate(d: int, mode: str):
    """Same output as :func:`evaluate_fixed` / :func:`evaluate_family` via block recursion."""
    _check_mode(mode)
    if d < 1:
        raise ValueError("d must be at least 1")
    total = d if mode == "fixed" else d + 1
    lcap, maxdeg = (1, 1) if mode == "fixed" else (2, 2)
    states: dict = {((), 0): Fraction(1)}
    for j in range(1, d + 1):
        nxt: dict = defaultdict(Fraction)
        for (blocks, used), c in states.items():
            for k in range(total - used + 1):
                if j == d and used + k != total:
                    continue
                for new, w in _block_transitions(blocks, k, lcap, maxdeg):
                    if mode == "family" and sum(1 for b in new if b[1] + b[2] == 2) > 1:
                        continue
                    nxt[(new, used + k)] += c * w
        states = {k: v for k, v in nxt.items() if v}
    m, g = bivar_gens()
    f = math.factorial(d)
    if mode == "fixed":
        out = Poly(gens=BIVAR)
        for (blocks, _), c in states.items():
            if all(l + om == 1 for _, l, om in blocks):
                nl = sum(l for _, l, _ in blocks)
                out = out + c * m ** nl * (2 * g - 2) ** (len(blocks) - nl)
        return out / f
    acc = [Poly(gens=BIVAR) for _ in range(3)]
    for (blocks, _), c in states.items():
        degs = [l + om for _, l, om in blocks]
        if degs.count(2) != 1 or any(x not in (1, 2) for x in degs):
            continue
        val = Poly.const(c)
        target = 0
        for _, l, om in blocks:
            if l + om == 1:
                val = val * (m if l else 2 * g - 2)
            else:
                target = {2: 0, 1: 1, 0: 2}[l]
        acc[target] = acc[target] + val
    return tuple(p / f for p in acc)


def trace_dump(d: int, mode: str, bound: int | None = None) -> dict:
    """JSON-ready record of the reduced normal form, for auditing."""
    expr = reduce(porteous_expand(d, mode, bound), mode)
    return {"d": d, "mode": mode, "terms": expr.to_records()}
