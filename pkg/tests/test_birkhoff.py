import sympy as sp
import pytest

from treerenorm.birkhoff import (
    birkhoff_decompose,
    birkhoff_forest_recursion,
    bogoliubov_bar,
    flow_locality_check,
    is_pole_valued,
    locality_check,
    RecursionOrderError,
)
from treerenorm.characters import (
    LinearMap,
    basis_forests,
    basis_trees,
    beta_expressions,
    beta_scalar,
    convolve,
    maps_agree,
    rg_generator_check,
    star_inverse,
    toy_character,
)
from treerenorm.coeff_series import L as L_SYM, LaurentSeries, Q
from treerenorm.config import Config
from treerenorm.forests import CHERRY, DOT, LADDER2, LADDER3, admissible_cuts, enumerate_trees

from conftest import L, series_to_sympy, z

CFG = Config(max_degree=4, z_hi=4)


@pytest.fixture(scope="module")
def pair():
    return birkhoff_decompose(toy_character(CFG))


def toy_sympy(t):
    expr = sp.exp(-t.degree * z * L)
    for v in t.vertices():
        expr *= sp.pi / sp.sin(sp.pi * v.degree * z)
    return expr


def laurent(expr, order):
    return sp.expand(sp.series(expr, z, 0, order).removeO())


def sympy_counterterms(max_degree):
    """Counter-terms by an independent sympy Bogoliubov recursion."""
    minus = {}
    for n in range(1, max_degree + 1):
        for t in enumerate_trees(n):
            bar = toy_sympy(t)
            for cut in admissible_cuts(t):
                m = sp.Integer(1)
                for s in cut.pruned.trees:
                    m *= minus[s]
                bar += m * toy_sympy(cut.cotree)
            ser = laurent(bar, 1)
            minus[t] = -sp.Add(*[ser.coeff(z, k) * z**k for k in range(-n, 0)])
    return minus


def test_counterterms_against_sympy(pair):
    want = sympy_counterterms(3)
    for t, expr in want.items():
        got = series_to_sympy(pair.minus.tree(t))
        assert sp.simplify(got - sp.expand(expr)) == 0, str(t)


def test_known_counterterms(pair):
    assert pair.minus.tree(DOT).agrees(LaurentSeries.from_rationals({-1: -1}))
    assert pair.minus.tree(LADDER2).agrees(LaurentSeries.from_rationals({-2: Q("1/2")}))
    assert sp.simplify(series_to_sympy(pair.minus.tree(CHERRY)) - (-z**-3 / 3 + sp.pi**2 / 18 / z)) == 0
    assert sp.simplify(series_to_sympy(pair.minus.tree(LADDER3)) - (-z**-3 / 6 - sp.pi**2 / 18 / z)) == 0


def test_locality(pair):
    assert locality_check(pair, 4) == (True, None)
    assert flow_locality_check(toy_character(CFG), 3, CFG) == (True, None)


def test_non_local_character_detected():
    # an L-dependent residue survives minimal subtraction
    bad = birkhoff_decompose(LinearMap(lambda t: LaurentSeries({-1: L_SYM}, hi=CFG.work_hi), "character", "bad"))
    ok, witness = locality_check(bad, 2)
    assert not ok and witness == DOT


def test_reconstruction_and_multiplicativity(pair):
    phi = toy_character(CFG)
    forests = basis_forests(4)
    assert maps_agree(convolve(star_inverse(pair.minus), pair.plus), phi, forests)
    minus, plus = birkhoff_forest_recursion(phi, forests)
    for f in forests:
        assert minus[f].agrees(pair.minus.forest(f))
        assert plus[f].agrees(pair.plus.forest(f))


def test_plus_is_holomorphic(pair):
    for t in basis_trees(4):
        assert min(pair.plus.tree(t).coeffs, default=0) >= 0
    assert is_pole_valued(pair.minus, basis_trees(4)) is None


def test_recursion_order_guard():
    phi = toy_character(CFG)
    with pytest.raises(RecursionOrderError):
        bogoliubov_bar(phi, {}, LADDER2)


def test_beta_values(pair):
    phi = toy_character(CFG)
    beta = beta_scalar(phi, basis_trees(4), pair)
    # beta(t) = -|t| Res phi_-(t), with phi_- from the sympy recursion
    want = sympy_counterterms(3)
    for t, m in want.items():
        res = sp.expand(m).coeff(z, -1)
        assert sp.simplify(series_to_sympy(LaurentSeries.const(beta[t])) + t.degree * res) == 0
    assert beta[DOT] == Q(1)


def test_rtilde_residue_is_conjugated_beta(pair):
    phi = toy_character(CFG)
    assert rg_generator_check(phi, basis_trees(3), pair) == (True, None)
    b1, b2, b3 = beta_expressions(phi, [CHERRY], pair)[CHERRY]
    assert b2 == b3
    # the residue of Rtilde differs from the counter-term beta at the cherry
    assert sp.simplify(series_to_sympy(LaurentSeries.const(b1)) - sp.pi**2 / 3) == 0
    assert sp.simplify(series_to_sympy(LaurentSeries.const(b2)) + sp.pi**2 / 6) == 0
