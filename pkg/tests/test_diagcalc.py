import json

import pytest

from secantplanes import diagcalc, genfun
from secantplanes.diagcalc import DiagonalMonomial
from secantplanes.exact import Poly

m, g = Poly.var("m"), Poly.var("g")


def _family_ref(d):
    return tuple(genfun.p_coeff(k, d) for k in ("Palpha", "Pbeta", "Pgamma"))


@pytest.mark.parametrize("d", range(1, 5))
def test_fixed_oracle(d):
    assert diagcalc.evaluate_fixed(d) == genfun.n_d(d)


@pytest.mark.parametrize("d", range(1, 4))
def test_family_oracle(d):
    assert diagcalc.evaluate_family(d) == _family_ref(d)


@pytest.mark.parametrize("seed", [0, 7, 1729])
def test_confluence_under_edge_order(seed):
    assert diagcalc.evaluate_fixed(4, seed=seed) == diagcalc.evaluate_fixed(4)
    assert diagcalc.evaluate_family(3, seed=seed) == diagcalc.evaluate_family(3)


@pytest.mark.parametrize("d", range(1, 7))
def test_block_recursion(d):
    assert diagcalc.fast_evaluate(d, "fixed") == genfun.n_d(d)
    assert diagcalc.fast_evaluate(d, "family") == _family_ref(d)


def test_triangle_reduces_to_self_intersection():
    tri = DiagonalMonomial(((1, 2), (1, 3), (2, 3)))
    fixed = diagcalc.reduce_monomial(tri, "fixed")
    assert len(fixed.edges) == 2
    assert fixed.coefficient == -(2 * g - 2)
    assert sum(e for _, e in fixed.pt_exponents) == 1
    fam = diagcalc.reduce_monomial(tri, "family")
    assert fam.coefficient == -1
    assert sum(e for _, e in fam.omega_exponents) == 1


def test_double_edge_is_a_cycle():
    mono = DiagonalMonomial(((1, 2), (1, 2)))
    assert diagcalc.reduce_monomial(mono, "family").omega_exponents
    assert diagcalc.reduce_monomial(mono, "fixed").pt_exponents


def test_hyperplane_class_on_merged_component():
    mono = DiagonalMonomial(((1, 2),), l_exponents=((2, 1),))
    red = diagcalc.reduce_monomial(mono, "fixed")
    assert red.coefficient == m and not red.l_exponents


def test_bound_guard():
    with pytest.raises(diagcalc.OracleBoundError):
        diagcalc.porteous_expand(9, "fixed")
    assert diagcalc.expansion_size_estimate(9, "fixed") > diagcalc.expansion_size_estimate(4, "fixed")


def test_unknown_mode():
    with pytest.raises(ValueError):
        diagcalc.porteous_expand(2, "mixed")


def test_expansion_degree_is_homogeneous():
    expr = diagcalc.porteous_expand(3, "family")
    assert {mono.degree for mono in expr} == {4}


def test_trace_dump_is_json():
    rec = diagcalc.trace_dump(2, "fixed")
    text = json.dumps(rec)
    assert json.loads(text)["d"] == 2
