from fractions import Fraction

import pytest

from secantplanes import moduli
from secantplanes.moduli import DivisorClass, ModuliDomainError


def test_rho_zero_point():
    assert moduli.rho_zero_point(2, 2) == (8, 3, 9)
    with pytest.raises(ModuliDomainError):
        moduli.rho_zero_point(1, 3)


def test_covering_degree_genus_8():
    # a general genus 8 curve has 14 g^3_9
    assert moduli.covering_degree(8, 3, 9) == 14
    assert moduli.xi(8, 3, 9) == 45


def test_covering_degree_rejects_negative():
    with pytest.raises(ModuliDomainError):
        moduli.covering_degree(3, 1, 10)


def test_gysin_beta():
    img = moduli.gysin("beta", 8, 3, 9)
    assert (img.lambda_coeff, img.delta0_coeff) == (108, -9)


def test_gysin_linear():
    a = moduli.gysin("alpha", 8, 3, 9)
    b = moduli.gysin("c", 8, 3, 9)
    s = a + 2 * b
    assert s.lambda_coeff == a.lambda_coeff + 2 * b.lambda_coeff


def test_gysin_pole():
    with pytest.raises(ModuliDomainError):
        moduli.gysin("alpha", 2, 1, 2)


def test_gysin_specialization():
    assert moduli.gysin_specialization_check(4, 6) == []


def test_boundary_relations_enforced():
    with pytest.raises(AssertionError):
        DivisorClass(2, 2, Fraction(22), Fraction(3), Fraction(0), Fraction(0))
    c = DivisorClass.from_leading(2, 2, 22, 3)
    assert c.b_1 == 12 * 3 - 22
    assert c.b_2 == Fraction(5, 2) * c.b_1 - 11


def test_genus_8_slope():
    c = moduli.sec_class(2, 2, per_sheet=True)
    assert c.slope == Fraction(22, 3)


def test_per_sheet_preserves_slope():
    assert moduli.sec_class(2, 3).slope == moduli.sec_class(2, 3, per_sheet=True).slope


def test_d1_class_vanishes():
    c = moduli.sec_class(3, 1)
    assert c.is_zero
    with pytest.raises(ModuliDomainError):
        c.slope
    assert c.to_record()["slope"] == "N/A"


@pytest.mark.parametrize("source", moduli.COEFF_SOURCES)
def test_sources_agree(source):
    assert moduli.sec_class(3, 3, source) == moduli.sec_class(3, 3, "hypergeom")


def test_slope_table():
    checks = moduli.slope_table()
    assert len(checks) == 8
    assert all(c.margins_match for c in checks)
    assert all(c.report.thresholds_hold for c in checks)
    # only the last two printed m entries disagree with rho = 0
    assert [c.m_matches for c in checks] == [True] * 6 + [False] * 2


def test_threshold_constant():
    assert moduli.THRESHOLD_LARGE_GENUS == Fraction(88828, 12870)


@pytest.mark.parametrize("a", range(2, 6))
def test_virtual_slopes(a):
    rep = moduli.virtual_slope_check(a, 12)
    assert rep.passed
    assert rep.vanishing == (1,)


def test_virtual_slope_range():
    with pytest.raises(ValueError):
        moduli.virtual_slope_closed_form(6)


@pytest.mark.parametrize("a", [2, 4])
def test_asymptotic_gap(a):
    rep = moduli.asymptotics(a, 200)
    assert rep.gap > 0
    assert rep.within(Fraction(9, 10), Fraction(11, 10))


def test_slope_never_below_brill_noether():
    # equality only in genus 8, where the slope is 22/3
    for a in range(2, 5):
        for d in range(2, 8):
            rep = moduli.slope_report(a, d)
            assert rep.bn_margin == rep.slope - 6 - Fraction(12, rep.g + 1)
            assert rep.bn_margin > 0 or (rep.g, rep.bn_margin) == (8, 0)
