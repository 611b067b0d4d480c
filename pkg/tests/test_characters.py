import sympy as sp
import pytest

from treerenorm.characters import (
    CHARACTER,
    INFINITESIMAL,
    LinearMap,
    NotInvertibleError,
    basis_forests,
    basis_trees,
    compose_grading,
    convolve,
    counit_map,
    exp_star,
    h_flow,
    log_star,
    maps_agree,
    renorm_group,
    rtilde,
    scale_flow,
    star_inverse,
    star_inverse_geometric,
    toy_character,
    u_operator,
)
from treerenorm.coeff_series import LaurentSeries, Q
from treerenorm.config import Config
from treerenorm.forests import CHERRY, DOT, LADDER2, Forest, parse_tree

from conftest import L, assert_matches_sympy, z

CFG = Config(max_degree=4, z_hi=4)
FORESTS = basis_forests(3)


@pytest.fixture(scope="module")
def phi():
    return toy_character(CFG)


def toy_sympy(t):
    expr = sp.exp(-t.degree * z * L)
    for v in t.vertices():
        expr *= sp.pi / sp.sin(sp.pi * v.degree * z)
    return expr


@pytest.mark.parametrize("text", ["[]", "[[]]", "[[][]]", "[[[]]]"])
def test_toy_values_against_sympy(phi, text):
    t = parse_tree(text)
    assert_matches_sympy(phi.tree(t), toy_sympy(t), -t.degree, 2)


def test_toy_without_log(phi):
    bare = toy_character(CFG, with_log=False)
    assert bare.tree(CHERRY).degree("L") <= 0
    assert phi.tree(CHERRY).degree("L") > 0


def test_character_is_multiplicative(phi):
    f = Forest.of(DOT, LADDER2)
    assert phi.forest(f).agrees(phi.tree(DOT) * phi.tree(LADDER2))
    assert phi.unit_value().agrees(LaurentSeries.one())


def test_inverse_forms_agree(phi):
    inv = star_inverse(phi)
    e = counit_map()
    assert maps_agree(convolve(inv, phi), e, FORESTS)
    assert maps_agree(convolve(phi, inv), e, FORESTS)
    assert maps_agree(inv, star_inverse_geometric(phi), FORESTS)


def test_convolution_of_characters_is_character(phi):
    g = scale_flow(phi, "1/2", CFG)
    prod = convolve(phi, g)
    assert prod.kind == CHARACTER
    general = convolve(LinearMap(phi.forest, name="phi_gen"), g)
    assert maps_agree(prod, general, FORESTS)


def test_exp_log_inverse(phi):
    lg = log_star(phi)
    assert maps_agree(exp_star(lg), phi, FORESTS)
    # log of a character is infinitesimal: it kills products
    assert lg.forest(Forest.of(DOT, DOT)).is_zero()


def test_non_unital_inverse_rejected():
    bad = LinearMap(lambda f: LaurentSeries.const(2), name="two")
    with pytest.raises(NotInvertibleError):
        star_inverse(bad)


def test_grading_derivation(phi):
    # Y is a derivation of the convolution product
    g = scale_flow(phi, "1/3", CFG)
    lhs = compose_grading(convolve(phi, g))
    rhs = convolve(compose_grading(phi), g) + convolve(phi, compose_grading(g))
    assert maps_agree(lhs, rhs, FORESTS)
    assert maps_agree(convolve(phi, rtilde(phi)), compose_grading(phi), FORESTS)


def test_h_flow_and_u_operator(phi):
    h = h_flow(phi, "1/2", CFG)
    assert maps_agree(convolve(phi, h), scale_flow(phi, "1/2", CFG), FORESTS)
    assert u_operator(phi, counit_map()).forest(Forest()).agrees(LaurentSeries.one())


def test_renorm_group_is_finite_and_rg_values():
    phi = toy_character(Config(max_degree=3, z_hi=4))
    f = renorm_group(phi, Config(max_degree=3, z_hi=4))("1/2")
    v = f.tree(DOT)
    # F_t(dot) = lim (exp(t z) - 1) B_1 = t
    assert v.agrees(LaurentSeries.const(Q("1/2")))
    for t in basis_trees(3):
        assert min(f.tree(t).coeffs, default=0) >= 0


def test_infinitesimal_kind_kills_products():
    xi = LinearMap(lambda t: LaurentSeries.const(t.degree), INFINITESIMAL, "xi")
    assert xi.forest(Forest.of(DOT, DOT)).is_zero()
    assert xi.forest(Forest()).is_zero()
    assert xi(parse_tree("[[]]")).agrees(LaurentSeries.const(2))
