"""Weighted counts of labeled graphs behind the exponential form of ``Z``.

Edges ``(i, j)`` with ``i < j`` are oriented ``i -> j``; ``indeg(j)`` counts
edge multiplicity at the larger endpoint.  A graph's weight is
``prod_j indeg(j)! / prod(multiplicities!)``.

Three families on ``d`` labeled vertices:

* ``T``: spanning trees, enumerated through Prüfer sequences;
* ``S1``: connected simple graphs with ``d`` edges (one cycle);
* ``S2``: spanning trees with one edge doubled.

The per-``n`` coefficient of ``log Z`` is
``(-1)^(n-1)/n * [(2n-1) w(T)/(n-1)! * m + (w(S1)+w(S2))/(n-1)! * (2g-2)]``.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exact import BIVAR, Poly, TruncatedSeries, bivar_gens, series_exp
from .genfun import z_series

MAX_D = 8


@dataclass(frozen=True)
class LabeledMultigraph:
    d: int
    edges: tuple  # sorted (i, j) pairs with repetition, i < j
    markings: frozenset = frozenset()

    def __post_init__(self):
        for i, j in self.edges:
            if not 1 <= i < j <= self.d:
                raise ValueError(f"bad edge {(i, j)} on {self.d} vertices")
        if not self.markings <= set(range(1, self.d + 1)):
            raise ValueError("markings must be vertices")

    def indegrees(self) -> list[int]:
        deg = [0] * (self.d + 1)
        for _, j in self.edges:
            deg[j] += 1
        return deg

    def weight(self) -> Fraction:
        w = Fraction(1)
        for x in self.indegrees():
            w *= math.factorial(x)
        for mult in Counter(self.edges).values():
            w /= math.factorial(mult)
        return w


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

def prufer_decode(seq: tuple, d: int) -> list[tuple]:
    """Edges ``(i, j)``, ``i < j``, of the labeled tree with Prüfer sequence ``seq``."""
    degree = [1] * (d + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, d + 1) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(1, d + 1) if degree[w] == 1)
    edges.append((u, v))
    return edges


def iter_trees(d: int, prefix: tuple = ()):
    """All labeled spanning trees of ``K_d`` whose Prüfer sequence starts with ``prefix``."""
    if d == 1:
        yield []
        return
    if d == 2:
        yield [(1, 2)]
        return
    for rest in product(range(1, d + 1), repeat=d - 2 - len(prefix)):
        yield prufer_decode(prefix + rest, d)


def _indeg(edges, d: int) -> list[int]:
    deg = [0] * (d + 1)
    for _, j in edges:
        deg[j] += 1
    return deg


def _tree_weight(deg) -> int:
    return math.prod(math.factorial(x) for x in deg)


@dataclass
class _Partial:
    trees: int = 0
    tree_sum: int = 0
    s1_scaled: int = 0  # S1 times lcm(1..d)
    s2_twice: int = 0   # S2 times 2
    by_indegree: Counter = field(default_factory=Counter)


def _distances(edges, d: int) -> list[list[int]]:
    adj = [[] for _ in range(d + 1)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    dist = [[0] * (d + 1) for _ in range(d + 1)]
    for src in range(1, d + 1):
        row = dist[src]
        seen = [False] * (d + 1)
        seen[src] = True
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        row[v] = row[u] + 1
                        nxt.append(v)
            frontier = nxt
    return dist


def _scan(d: int, prefix: tuple, want_cycles: bool) -> _Partial:
    out = _Partial()
    scale = math.lcm(*range(1, d + 1))
    for edges in iter_trees(d, prefix):
        deg = _indeg(edges, d)
        w = _tree_weight(deg)
        out.trees += 1
        out.tree_sum += w
        out.s2_twice += w * sum(x * (x + 1) for x in deg)
        out.by_indegree[tuple(sorted((x for x in deg if x), reverse=True))] += 1
        if want_cycles:
            # each unicyclic graph T+(u,v) arises from as many trees as its cycle length
            present = set(edges)
            dist = _distances(edges, d)
            acc = 0
            for v in range(2, d + 1):
                factor = deg[v] + 1
                row = dist[v]
                for u in range(1, v):
                    if (u, v) not in present:
                        acc += factor * scale // (row[u] + 1)
            out.s1_scaled += w * acc
    return out


def _merge(parts) -> _Partial:
    total = _Partial()
    for p in parts:
        total.trees += p.trees
        total.tree_sum += p.tree_sum
        total.s1_scaled += p.s1_scaled
        total.s2_twice += p.s2_twice
        total.by_indegree.update(p.by_indegree)
    return total


_CACHE: dict = {}


def _enumerate(d: int, want_cycles: bool, workers: int = 1) -> _Partial:
    if not 1 <= d <= MAX_D:
        raise ValueError(f"d must lie in 1..{MAX_D}")
    key = (d, want_cycles)
    if key in _CACHE:
        return _CACHE[key]
    if want_cycles and (d, False) in _CACHE:
        _CACHE.pop((d, False))
    prefixes = [(x,) for x in range(1, d + 1)] if d >= 3 else [()]
    if workers > 1 and len(prefixes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, [d] * len(prefixes), prefixes,
                                  [want_cycles] * len(prefixes)))
    else:
        parts = [_scan(d, p, want_cycles) for p in prefixes]
    result = _merge(parts)
    _CACHE[key] = result
    if want_cycles:
        _CACHE[(d, False)] = result
    return result


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    d: int
    value: Fraction
    expected: Fraction

    @property
    def passed(self) -> bool:
        return self.value == self.expected

    def to_row(self) -> dict:
        return {"d": self.d, "identity": self.name, "value": str(self.value),
                "expected": str(self.expected), "pass": self.passed}


def tree_weight_sum(d: int, workers: int = 1) -> tuple[int, IdentityCheck]:
    """``sum_T w(T)`` and the check ``(2d-1) sum = C(2d-1, d-1) (d-1)!``."""
    res = _enumerate(d, False, workers)
    expected = math.comb(2 * d - 1, d - 1) * math.factorial(d - 1)
    check = IdentityCheck("tree", d, Fraction((2 * d - 1) * res.tree_sum), Fraction(expected))
    return res.tree_sum, check


def tree_count(d: int) -> int:
    return _enumerate(d, False).trees


def connected_graph_sums(d: int, workers: int = 1) -> tuple[Fraction, Fraction, list[IdentityCheck]]:
    """Weighted sums over ``S1`` and ``S2`` with their closed-form checks."""
    res = _enumerate(d, True, workers)
    s1 = Fraction(res.s1_scaled, math.lcm(*range(1, d + 1)))
    s2 = Fraction(res.s2_twice, 2)
    f = math.factorial(d - 1)
    e1 = sum(math.comb(2 * d - 1, i) for i in range(d - 2)) * f
    e2 = math.comb(2 * d - 1, d - 2) * f if d >= 2 else 0
    return s1, s2, [IdentityCheck("S1", d, s1, Fraction(e1)), IdentityCheck("S2", d, s2, Fraction(e2))]


# ---------------------------------------------------------------------------
# Trees by indegree type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndegreePartition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def multiplicities(self) -> Counter:
        return Counter(self.parts)


def closed_form_trees(lam: IndegreePartition, d: int) -> Fraction:
    """``(d-1)!^2 / ((d-k)! prod e_i! prod (lambda_i!)^e_i)``, ``k`` the number of parts."""
    k = len(lam.parts)
    den = math.factorial(d - k)
    for part, e in lam.multiplicities.items():
        den *= math.factorial(e) * math.factorial(part) ** e
    return Fraction(math.factorial(d - 1) ** 2, den)


def trees_by_indegree(parts, d: int) -> tuple[int, Fraction]:
    """Trees whose nonzero indegrees form the multiset ``parts``; also the closed form."""
    lam = parts if isinstance(parts, IndegreePartition) else IndegreePartition(tuple(parts))
    if sum(lam.parts) != d - 1:
        raise ValueError(f"partition {lam.parts} does not sum to d-1 = {d - 1}")
    if d > MAX_D:
        raise ValueError(f"d must be at most {MAX_D}")
    return _enumerate(d, False).by_indegree[lam.parts], closed_form_trees(lam, d)


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Exponential formula
# ---------------------------------------------------------------------------

def connected_series(dmax: int, workers: int = 1) -> TruncatedSeries:
    """``log Z`` assembled from the graph sums, symbolic in ``(m, g)``."""
    m, g = bivar_gens()
    coeffs = [Poly(gens=BIVAR)]
    for n in range(1, dmax + 1):
        f = math.factorial(n - 1)
        tsum, _ = tree_weight_sum(n, workers)
        if n >= 2:
            s1, s2, _ = connected_graph_sums(n, workers)
        else:
            s1 = s2 = Fraction(0)
        sign = 1 if n % 2 else -1
        c = (m * Fraction((2 * n - 1) * tsum, f) + (2 * g - 2) * ((s1 + s2) / f)) * Fraction(sign, n)
        coeffs.append(c)
    return TruncatedSeries(coeffs)


@dataclass
class ExponentialReport:
    dmax: int
    mismatches: list

    @property
    def passed(self) -> bool:
        return not self.mismatches


def exponential_consistency(dmax: int, workers: int = 1) -> ExponentialReport:
    if not 1 <= dmax <= MAX_D:
        raise ValueError(f"dmax must lie in 1..{MAX_D}")
    lhs = series_exp(connected_series(dmax, workers))
    rhs = z_series(None, None, dmax + 1, method="closed")
    bad = [n for n in range(dmax + 1) if lhs[n] != rhs[n]]
    return ExponentialReport(dmax, bad)


def identity_rows(dmax: int, workers: int = 1) -> list[dict]:
    """Per-``d`` rows for CSV emission."""
    rows = []
    for d in range(2, dmax + 1):
        rows.append(tree_weight_sum(d, workers)[1].to_row())
        if d >= 3:
            for chk in connected_graph_sums(d, workers)[2]:
                rows.append(chk.to_row())
    return rows


def unicyclic_sum_direct(d: int) -> Fraction:
    """``w(S1)`` by brute force over all d-edge subsets of ``K_d`` (small ``d`` only)."""
    from itertools import combinations

    if d > 6:
        raise ValueError("direct enumeration is limited to d <= 6")
    pairs = [(i, j) for j in range(2, d + 1) for i in range(1, j)]
    total = Fraction(0)
    for edges in combinations(pairs, d):
        parent = list(range(d + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in edges:
            parent[find(i)] = find(j)
        if len({find(v) for v in range(1, d + 1)}) == 1:
            total += LabeledMultigraph(d, edges).weight()
    return total
