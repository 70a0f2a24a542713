import math
from fractions import Fraction

import pytest

from secantplanes import genfun, relations
from secantplanes.exact import Poly

m, g = Poly.var("m"), Poly.var("g")


@pytest.mark.parametrize("d", range(1, 9))
def test_solved_bundle_satisfies_relations(d):
    b = relations.solve_coefficients(d)
    res = relations.check_bundle(b)
    assert set(res) == {"renormalization", "trivial_family", "projection", "k3", "quadratic"}
    assert all(r.is_zero() for r in res.values())


@pytest.mark.parametrize("d", range(1, 7))
def test_solved_bundle_matches_series(d):
    b = relations.solve_coefficients(d)
    for name, p in b.items():
        assert p == genfun.p_coeff(name, d), name


@pytest.mark.parametrize("d", range(1, 9))
def test_k3_family_vanishes(d):
    b = relations.solve_coefficients(d)
    assert relations.evaluate_on_family(b, relations.k3_invariants(2 * d - 1)).is_zero()


def test_d1():
    b = relations.solve_coefficients(1)
    assert b.Pc == -m
    assert b.Pgamma == 0 and b.Pdelta0 == 0


def test_trisecant_scaled():
    b = relations.solve_coefficients(3).scaled(math.factorial(3))
    assert b.Pbeta == 72 - 12 * m
    assert b.Pgamma == 28 - 3 * m


def test_numeric_node_bundle():
    vals = relations.solve_coefficients(2).evaluate(8, 9)
    assert vals["Pc"] == -20
    assert vals["Palpha"] == 6


def test_d_zero_rejected():
    with pytest.raises(ValueError):
        relations.solve_coefficients(0)


@pytest.mark.parametrize("key", list(relations.EXAMPLES))
def test_examples(key):
    rep = relations.verify_example(key)
    assert rep.passed, rep.to_record()


def test_printed_d5_needs_its_erratum():
    rep = relations.verify_example("d5s9")
    assert not rep.exact_as_printed
    assert rep.erratum is not None and rep.to_record()["erratum"]["confirmed"]
    for key in ("d2s3", "d3s5", "d4s7"):
        assert relations.verify_example(key).exact_as_printed


@pytest.mark.parametrize("key", ["r2d3", "r3d5"])
def test_equal_rank_relations(key):
    ex = relations.EXAMPLES[key]
    b = ex.bundle()
    for rel in (relations.renormalization_relation(ex.s), relations.k3_relation(ex.s),
                relations.quadratic_relation_equal_rank(ex.s)):
        assert rel.residual(b).is_zero(), rel.name


def test_relation_residual_detects_perturbation():
    b = relations.solve_coefficients(3)
    bad = relations.CoeffBundle(3, b.Palpha + 1, b.Pbeta, b.Pgamma, b.Pc, b.Pdelta0)
    res = relations.check_bundle(bad)
    assert not res["renormalization"].is_zero()
    assert res["trivial_family"].is_zero()


def test_bundle_record_roundtrip():
    b = relations.solve_coefficients(4)
    rec = b.to_record()
    assert rec["s"] == 7
    assert Poly.from_records(rec["Pc"]) == b.Pc
    assert b.evaluate(20, 16)["Pc"] == -genfun.n_d(4, 20, 16)
    assert isinstance(b.evaluate(20, 16)["Pc"], Fraction)
