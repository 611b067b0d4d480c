from math import factorial

import sympy as sp
import pytest
from hypothesis import given, settings, strategies as st

from treerenorm.coeff_series import (
    INF,
    L,
    PI2,
    TAU,
    LaurentSeries,
    PrecisionError,
    Q,
    SeriesError,
    SymPoly,
    bn_series,
    eval_at_zero,
    holomorphic_part,
    minimal_subtraction,
    residue,
    series_exp,
    series_invert,
    sin_series,
)

from conftest import L as sL, assert_matches_sympy, poly_to_sympy, series_to_sympy, z

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw):
    items = draw(st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2), st.just(0), st.just(0)),
                                    fractions), max_size=3))
    return SymPoly.from_exponents(items)


@st.composite
def series(draw, lo=-3, hi=3):
    coeffs = draw(st.dictionaries(st.integers(lo, hi), polys(), max_size=4))
    return LaurentSeries(coeffs, lo=lo, hi=hi + 2)


@given(polys(), polys(), polys())
def test_sympoly_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert poly_to_sympy(a * b) - sp.expand(poly_to_sympy(a) * poly_to_sympy(b)) == 0


@given(series(), series())
@settings(max_examples=60)
def test_series_product_matches_sympy(a, b):
    p = a * b
    want = sp.expand(series_to_sympy(a) * series_to_sympy(b))
    got = series_to_sympy(p)
    for k in range(p.lo if p.lo != INF else 0, p.hi + 1):
        assert sp.expand(got.coeff(z, k) - want.coeff(z, k)) == 0


@given(series(lo=0, hi=3))
@settings(max_examples=40)
def test_invert(a):
    lead = a.coeffs.get(a.valuation()) if a.coeffs else None
    if lead is None or not lead.is_constant():
        with pytest.raises(SeriesError):
            series_invert(a)
        return
    prod = a * series_invert(a)
    assert prod.agrees(LaurentSeries.one())
    assert prod.hi == a.hi - a.valuation()


def test_window_tracking():
    a = LaurentSeries.from_rationals({-1: 1, 0: 2}, hi=3)
    b = LaurentSeries.from_rationals({-2: 1}, hi=1)
    # lowest terms limit what the product knows
    assert (a * b).hi == min(-1 + 1, -2 + 3)
    with pytest.raises(PrecisionError):
        (a * b).coeff(1)


def test_exact_monomials():
    m = LaurentSeries.monomial(3, -2)
    assert m.is_exact()
    assert series_invert(m).agrees(LaurentSeries.monomial(Q("1/3"), 2))


def test_sin_and_beta_series_against_sympy():
    for n in (1, 2, 3):
        assert_matches_sympy(sin_series(n, 7), sp.sin(sp.pi * n * z) / sp.pi, 1, 7)
        assert_matches_sympy(bn_series(n, 5), sp.pi / sp.sin(sp.pi * n * z), -1, 5)


def test_exp_against_sympy():
    a = LaurentSeries({1: L.scale(-2)}, hi=6)
    assert_matches_sympy(series_exp(a), sp.exp(-2 * sL * z), 0, 6)
    with pytest.raises(SeriesError):
        series_exp(LaurentSeries.monomial(1, -1))
    with pytest.raises(SeriesError):
        series_exp(LaurentSeries.const(1))


def test_exp_tau_nilpotent():
    a = LaurentSeries({0: TAU}, tau_prec=3)
    e = series_exp(a).coeff(0)
    want = [((0, 0, k, 0), Q(1) / factorial(k)) for k in range(4)]
    assert e == SymPoly.from_exponents(want)
    # d/dTAU exp(TAU) = exp(TAU) one TAU-order down
    assert e.diff_tau().equal_mod_tau(e, 2)


def test_projections_split_and_are_idempotent():
    a = LaurentSeries({-2: PI2, -1: L, 0: TAU, 2: PI2 * L}, hi=4)
    p, h = minimal_subtraction(a), holomorphic_part(a)
    assert (p + h).agrees(a)
    assert minimal_subtraction(p).agrees(p)
    assert minimal_subtraction(h).is_zero()
    assert residue(a) == L
    assert eval_at_zero(h) == TAU
    with pytest.raises(SeriesError):
        eval_at_zero(a)


def test_minimal_subtraction_needs_residue():
    with pytest.raises(PrecisionError):
        minimal_subtraction(LaurentSeries.from_rationals({-3: 1}, hi=-2))


def test_agrees_upto_refuses_vacuous():
    a = LaurentSeries.from_rationals({0: 1}, hi=1)
    with pytest.raises(PrecisionError):
        a.agrees(a, upto=3)


def test_json_roundtrip():
    a = LaurentSeries({-1: PI2.scale(3), 2: L * TAU}, hi=5, tau_prec=4)
    assert LaurentSeries.from_json(a.to_json()).agrees(a)
    assert LaurentSeries.from_json(a.to_json()).window == a.window


def test_tau_truncation_and_substitution():
    a = LaurentSeries({0: TAU * TAU + TAU + SymPoly.const(1)}, tau_prec=2)
    assert a.subs_tau(0).agrees(LaurentSeries.one())
    with pytest.raises(PrecisionError):
        a.subs_tau(1)
    exact = LaurentSeries({0: TAU * TAU})
    assert exact.subs_tau(3).agrees(LaurentSeries.const(9))


def test_printing():
    a = LaurentSeries.from_rationals({-1: 1, 1: -2})
    assert str(a) == "z^-1 - 2 z"
    assert str(LaurentSeries()) == "0"
