"""Verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import diagcalc, genfun, graphcomb, hypergeom, moduli, relations

DEFAULT_SEED = 1729
SUITES = ("series", "hypergeom", "oracle", "graphs", "examples", "moduli")

# Taylor coefficients [z^n] for n = 2..9, times 6
Y_TAYLOR = (3, -20, 105, -504, 2310, -10296, 45045, -194480)
X_TAYLOR = (-3, 28, -177, 960, -4806, 22920, -105837, 477688)


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {"suite": self.suite, "name": self.name, "pass": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


@dataclass
class Bounds:
    d_max: int | None = None
    mode: str | None = None  # oracle: fixed, family, or both
    workers: int = 1
    stretch: bool = False
    seed: int = DEFAULT_SEED


def _timed(suite: str, name: str, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    t = time.perf_counter()
    ok, detail = fn()
    return CheckResult(suite, name, bool(ok), time.perf_counter() - t, detail)


# ---------------------------------------------------------------------------

def check_xy_taylor(n_closed: int = 30) -> tuple[bool, dict]:
    x, y = genfun.xy_series(max(10, n_closed + 1))
    bad = []
    for n, (xv, yv) in enumerate(zip(X_TAYLOR, Y_TAYLOR), start=2):
        if x[n] != Fraction(xv, 6):
            bad.append(("X", n))
        if y[n] != Fraction(yv, 6):
            bad.append(("Y", n))
    closed = [(w, n) for n in range(n_closed + 1) for w, s in (("X", x), ("Y", y))
              if genfun.xy_closed_coeff(w, n) != s[n]]
    return not bad and not closed, {"taylor_mismatches": bad, "closed_form_mismatches": closed}


def check_z_forms(order: int = 12) -> tuple[bool, dict]:
    a = genfun.z_series(None, None, order, method="exp")
    b = genfun.z_series(None, None, order, method="closed")
    bad = [n for n in range(order) if a[n] != b[n]]
    return not bad, {"order": order, "mismatches": bad}


def check_multiplicativity(order: int = 13) -> tuple[bool, dict]:
    rep = genfun.multiplicativity_check(order)
    return rep.passed, {"order": rep.order, "mismatches": rep.mismatches}


def check_derivative_forms(genera=(0, 5, 8)) -> tuple[bool, dict]:
    detail = {}
    ok = True
    for g in genera:
        rep = genfun.pgamma_first_form_check(g)
        detail[str(g)] = {k: v.passed for k, v in rep.variants.items()}
        ok &= rep.passed
    return ok, detail


def series_suite(bounds: Bounds) -> list[CheckResult]:
    return [
        _timed("series", "xy_taylor", check_xy_taylor),
        _timed("series", "z_exp_vs_closed", check_z_forms),
        _timed("series", "multiplicativity", check_multiplicativity),
        _timed("series", "derivative_forms", check_derivative_forms),
    ]


# ---------------------------------------------------------------------------

def check_hypergeom_grid(d_max: int = 8, a_max: int = 6) -> tuple[bool, dict]:
    recs = hypergeom.grid_report(range(2, a_max + 1), range(1, d_max + 1))
    bad = [r for r in recs if not r["pass"]]
    return not bad, {"compared": len(recs), "failures": bad}


def check_nonempty(a_max: int = 10, d_max: int = 50) -> tuple[bool, dict]:
    bad = []
    for a in range(2, a_max + 1):
        for d in range(1, d_max + 1):
            rep = hypergeom.nonempty_check(a, d)
            if not rep.passed:
                bad.append(rep.to_record())
    return not bad, {"a_max": a_max, "d_max": d_max, "failures": bad}


def hypergeom_suite(bounds: Bounds) -> list[CheckResult]:
    d_max = bounds.d_max or 8
    return [
        _timed("hypergeom", "hyper_vs_series", lambda: check_hypergeom_grid(d_max)),
        _timed("hypergeom", "nonemptiness", check_nonempty),
    ]


# ---------------------------------------------------------------------------

def check_oracle_fixed(d_max: int) -> tuple[bool, dict]:
    bad = [d for d in range(1, d_max + 1)
           if diagcalc.evaluate_fixed(d, bound=max(d_max, 1)) != genfun.n_d(d)]
    return not bad, {"d_max": d_max, "mismatches": bad}


def _family_reference(d: int):
    return tuple(genfun.p_coeff(k, d) for k in ("Palpha", "Pbeta", "Pgamma"))


def check_oracle_family(d_max: int) -> tuple[bool, dict]:
    bad = [d for d in range(1, d_max + 1)
           if diagcalc.evaluate_family(d, bound=max(d_max, 1)) != _family_reference(d)]
    return not bad, {"d_max": d_max, "mismatches": bad}


def check_oracle_fast(d_max: int = 8) -> tuple[bool, dict]:
    bad = []
    for d in range(1, d_max + 1):
        if diagcalc.fast_evaluate(d, "fixed") != genfun.n_d(d):
            bad.append(("fixed", d))
        if diagcalc.fast_evaluate(d, "family") != _family_reference(d):
            bad.append(("family", d))
    return not bad, {"d_max": d_max, "mismatches": bad}


def check_confluence(d: int = 4, seeds=(DEFAULT_SEED, DEFAULT_SEED + 1)) -> tuple[bool, dict]:
    ref = diagcalc.evaluate_family(d)
    bad = [s for s in seeds if diagcalc.evaluate_family(d, seed=s) != ref]
    return not bad, {"d": d, "seeds": list(seeds), "mismatches": bad}


def oracle_suite(bounds: Bounds) -> list[CheckResult]:
    mode = bounds.mode or "both"
    out = []
    if mode in ("fixed", "both"):
        d_fixed = bounds.d_max or (6 if bounds.stretch else 5)
        out.append(_timed("oracle", "fixed", lambda: check_oracle_fixed(d_fixed)))
    if mode in ("family", "both"):
        d_family = bounds.d_max or (5 if bounds.stretch else 4)
        out.append(_timed("oracle", "family", lambda: check_oracle_family(d_family)))
        seeds = (bounds.seed, bounds.seed + 1)
        out.append(_timed("oracle", "confluence", lambda: check_confluence(4, seeds)))
    out.append(_timed("oracle", "block_recursion", check_oracle_fast))
    return out


# ---------------------------------------------------------------------------

def check_graph_identities(d_max: int = 8, workers: int = 1) -> tuple[bool, dict]:
    rows = graphcomb.identity_rows(d_max, workers)
    cayley = [d for d in range(1, d_max + 1)
              if graphcomb.tree_count(d) != d ** max(d - 2, 0)]
    bad = [r for r in rows if not r["pass"]]
    return not bad and not cayley, {"rows": rows, "cayley_failures": cayley}


def check_indegree_classes(d_max: int = 6) -> tuple[bool, dict]:
    bad = []
    for d in range(2, d_max + 1):
        total = 0
        for lam in graphcomb.partitions(d - 1):
            count, closed = graphcomb.trees_by_indegree(lam, d)
            total += count
            if count != closed:
                bad.append((d, lam, count, str(closed)))
        if total != d ** (d - 2):
            bad.append((d, "total", total))
    return not bad, {"d_max": d_max, "failures": bad}


def check_exponential(dmax: int = 6, workers: int = 1) -> tuple[bool, dict]:
    rep = graphcomb.exponential_consistency(dmax, workers)
    return rep.passed, {"dmax": dmax, "mismatches": rep.mismatches}


def graphs_suite(bounds: Bounds) -> list[CheckResult]:
    d_max = bounds.d_max or 8
    return [
        _timed("graphs", "weight_identities",
               lambda: check_graph_identities(d_max, bounds.workers)),
        _timed("graphs", "indegree_closed_form", lambda: check_indegree_classes(min(6, d_max))),
        _timed("graphs", "exponential_formula",
               lambda: check_exponential(min(6, d_max), bounds.workers)),
    ]


# ---------------------------------------------------------------------------

def check_relation_web(d_max: int = 8) -> tuple[bool, dict]:
    bad = []
    for d in range(1, d_max + 1):
        b = relations.solve_coefficients(d)
        for name, res in relations.check_bundle(b).items():
            if not res.is_zero():
                bad.append((d, name))
        if not relations.evaluate_on_family(b, relations.k3_invariants(2 * d - 1)).is_zero():
            bad.append((d, "k3_family"))
        for name, p in b.items():
            if p != genfun.p_coeff(name, d):
                bad.append((d, "series_" + name))
    return not bad, {"d_max": d_max, "failures": bad}


def check_example(key: str) -> tuple[bool, dict]:
    rep = relations.verify_example(key)
    return rep.passed, rep.to_record()


def check_factorial_integrality(d_max: int = 5) -> tuple[bool, dict]:
    bad = [d for d in range(1, d_max + 1)
           if not all(p.has_integer_coefficients()
                      for _, p in relations.solve_coefficients(d).scaled(math.factorial(d)).items())]
    return not bad, {"d_max": d_max, "failures": bad}


def examples_suite(bounds: Bounds) -> list[CheckResult]:
    d_max = bounds.d_max or 8
    out = [_timed("examples", "relation_web", lambda: check_relation_web(d_max)),
           _timed("examples", "factorial_integrality", check_factorial_integrality)]
    for key in relations.EXAMPLES:
        out.append(_timed("examples", key, lambda key=key: check_example(key)))
    return out


# ---------------------------------------------------------------------------

def check_slope_table() -> tuple[bool, dict]:
    checks = moduli.slope_table()
    recs = [c.to_record() for c in checks]
    ok = all(c.margins_match and c.report.thresholds_hold for c in checks)
    return ok, {"rows": recs}


def check_virtual_slopes(d_max: int = 30) -> tuple[bool, dict]:
    detail = {}
    ok = True
    for a in range(2, 6):
        rep = moduli.virtual_slope_check(a, d_max)
        detail[str(a)] = {"mismatches": list(rep.mismatches), "vanishing": list(rep.vanishing)}
        ok &= rep.passed
    return ok, detail


def check_gysin_specialization() -> tuple[bool, dict]:
    bad = moduli.gysin_specialization_check(6, 10)
    return not bad, {"mismatches": bad}


def check_positivity(a_max: int = 6, d_max: int = 20) -> tuple[bool, dict]:
    bad = []
    for a in range(2, a_max + 1):
        for d in range(2, d_max + 1):
            c = moduli.sec_class(a, d, per_sheet=True)
            if not (c.b_lambda > 0 and c.b_0 > 0):
                bad.append((a, d))
    return not bad, {"a_max": a_max, "d_range": [2, d_max], "failures": bad}


def check_asymptotics(d: int = 1000) -> tuple[bool, dict]:
    detail = {}
    ok = True
    for a in range(2, 7):
        rep = moduli.asymptotics(a, d)
        detail[str(a)] = {"normalized_gap": f"{float(rep.normalized_gap):.6f}",
                          "s_ratio_relative_error": f"{float(rep.s_ratio_error):.3e}"}
        ok &= rep.within()
    return ok, detail


def check_sources_agree(pairs=((2, 3), (3, 4), (4, 5))) -> tuple[bool, dict]:
    bad = [(a, d) for a, d in pairs
           if not (moduli.sec_class(a, d, "hypergeom") == moduli.sec_class(a, d, "relations")
                   == moduli.sec_class(a, d, "series"))]
    return not bad, {"pairs": [list(p) for p in pairs], "failures": bad}


def moduli_suite(bounds: Bounds) -> list[CheckResult]:
    return [
        _timed("moduli", "slope_table", check_slope_table),
        _timed("moduli", "virtual_slopes", check_virtual_slopes),
        _timed("moduli", "gysin_specialization", check_gysin_specialization),
        _timed("moduli", "positivity", check_positivity),
        _timed("moduli", "asymptotics", check_asymptotics),
        _timed("moduli", "coefficient_sources", check_sources_agree),
    ]


SUITE_FUNCS = {
    "series": series_suite,
    "hypergeom": hypergeom_suite,
    "oracle": oracle_suite,
    "graphs": graphs_suite,
    "examples": examples_suite,
    "moduli": moduli_suite,
}


def run(suite: str, bounds: Bounds | None = None) -> list[CheckResult]:
    bounds = bounds or Bounds()
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}")
        out.extend(SUITE_FUNCS[name](bounds))
    return out
