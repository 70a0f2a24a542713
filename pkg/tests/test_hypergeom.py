import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from secantplanes import genfun, hypergeom
from secantplanes.hypergeom import HypergeometricDomainError, f32_unit, pochhammer

rat = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def _safe(upper, lower):
    try:
        return f32_unit(upper, lower)
    except HypergeometricDomainError:
        assume(False)


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(-2, 3) == 0
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)


@settings(max_examples=60, deadline=None)
@given(rat, rat, st.integers(0, 6), rat, rat)
def test_f32_parameter_symmetry(a, b, n, c, e):
    base = _safe((a, b, -n), (c, e))
    for up in itertools.permutations((a, b, -n)):
        assert f32_unit(up, (e, c)) == base


@settings(max_examples=60, deadline=None)
@given(rat, rat, rat, st.integers(0, 6))
def test_pfaff_saalschutz(a, b, c, n):
    lower = (c, 1 + a + b - c - n)
    value = _safe((a, b, -n), lower)
    den = pochhammer(c, n) * pochhammer(c - a - b, n)
    assume(den != 0)
    assert value == pochhammer(c - a, n) * pochhammer(c - b, n) / den


def test_nonterminating_rejected():
    with pytest.raises(HypergeometricDomainError):
        f32_unit((Fraction(1, 2), 1, 2), (3, 4))


def test_zero_lower_pochhammer_rejected():
    with pytest.raises(HypergeometricDomainError):
        f32_unit((-3, 1, 1), (-1, 2))


def test_wrong_arity():
    with pytest.raises(ValueError):
        f32_unit((-1, 1), (1, 1))


@pytest.mark.parametrize("which", hypergeom.PHYPER_KINDS)
@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_matches_series_off_grid(which, d):
    # the hypergeometric forms hold for any (g, m) where every factorial is defined
    for g, m in [(4 * d + 2, 6 * d), (6 * d, 9 * d + 1)]:
        assert hypergeom.p_hyper(which, d, g, m) == genfun.p_coeff(which, d, g, m)


def test_node_count():
    assert hypergeom.pc_rho_zero(2, 2) == -20
    assert hypergeom.pc_rho_zero(2, 1) == -3
    assert hypergeom.p_hyper("Pc", 2, 8, 9) == -20


def test_unknown_kind():
    with pytest.raises(ValueError):
        hypergeom.p_hyper("Pfoo", 2, 8, 9)


@pytest.mark.parametrize("a,d", [(2, 1), (3, 1), (4, 2), (7, 3), (10, 50)])
def test_nonempty(a, d):
    rep = hypergeom.nonempty_check(a, d)
    assert rep.passed, rep.to_record()


def test_q_terms_vanish_past_d():
    terms = hypergeom.q_terms(9, 1)
    assert terms[2:] == [0] * (len(terms) - 2)
    assert hypergeom.nonempty_check(9, 1).passed


def test_grid_report_shape():
    recs = hypergeom.grid_report([2, 3], [1, 2])
    assert len(recs) == 2 * 2 * 5
    assert all(r["pass"] for r in recs)


def test_refuses_outside_factorial_domain():
    with pytest.raises(HypergeometricDomainError):
        hypergeom.p_hyper("Pc", 3, 2, 1)
