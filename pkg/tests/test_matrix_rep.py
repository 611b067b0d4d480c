import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from treerenorm import golden
from treerenorm.birkhoff import birkhoff_decompose
from treerenorm.characters import toy_character
from treerenorm.coeff_series import L, LaurentSeries, SymPoly, bn_series
from treerenorm.config import Config
from treerenorm.forests import LADDER3, TH43, parse_tree
from treerenorm.hopf import HopfElement
from treerenorm.matrix_rep import (
    CoidealBasis,
    HopfMatrix,
    NotACoidealError,
    TriMatrix,
    antipode_matrix,
    atkinson_factorize,
    atkinson_identity,
    beta_matrix,
    beta_matrix_bch,
    beta_matrix_commutator,
    beta_psi,
    coideal_closure,
    coproduct_matrix,
    inverse_chain_plus,
    matrix_coassociativity,
    nonrecursive_entries,
    psi,
    scattering_limit,
    scattering_psi,
    scattering_spectral,
    z0_matrix,
)

from conftest import series_to_sympy

CFG = Config(max_degree=4, z_hi=4)


@pytest.fixture(scope="module")
def th43():
    basis = coideal_closure([TH43])
    phi = toy_character(CFG)
    phi_hat = psi(phi, basis)
    return basis, phi, phi_hat, atkinson_factorize(phi_hat)


def test_coideal_closure_and_golden_matrix():
    basis = coideal_closure([TH43])
    assert basis.labels() == ["1", "[]", "[[]]", "[[][]]", "[[][][]]"]
    m = coproduct_matrix(basis)
    want = HopfMatrix([[HopfElement.parse(s) if s != "0" else HopfElement() for s in row]
                       for row in golden.COPRODUCT_MATRIX])
    assert m == want
    assert matrix_coassociativity(m)


def test_antipode_matrix_is_inverse():
    # S applied entrywise inverts M, since m(S (x) id)Delta = eta eps
    m = coproduct_matrix(coideal_closure([parse_tree("[[[]][]]")]))
    assert antipode_matrix(m) * m == HopfMatrix.identity(m.n)
    assert m.inverse_unipotent() == antipode_matrix(m)


def test_not_a_coideal():
    with pytest.raises(NotACoidealError):
        CoidealBasis([parse_tree("[[][]]")])
    with pytest.raises(ValueError):
        CoidealBasis([parse_tree("[[]]"), parse_tree("[]")])


def test_psi_matches_golden_display(th43):
    _, _, phi_hat, _ = th43
    for (i, j), (coef, k, bs) in golden.PSI_TOY.items():
        # coef * exp(-k z L) * prod B_b
        want = LaurentSeries.monomial(L.scale(-k), 1).exp(CFG.work_hi).scale(coef)
        for b in bs:
            want = want * bn_series(b, CFG.work_hi)
        assert phi_hat[i - 1, j - 1].agrees(want), (i, j)


def test_atkinson_against_scalar_birkhoff(th43):
    basis, phi, phi_hat, res = th43
    pair = birkhoff_decompose(phi)
    assert res.minus.agrees(psi(pair.minus, basis))
    assert res.plus.agrees(psi(pair.plus, basis))
    assert atkinson_identity(phi_hat, res)
    assert (res.minus.inverse_unipotent() * res.plus).agrees(phi_hat)


def test_chain_sums(th43):
    _, _, phi_hat, res = th43
    minus, plus_inv = nonrecursive_entries(phi_hat)
    assert minus.agrees(res.minus)
    assert plus_inv.agrees(res.plus_inv)
    assert inverse_chain_plus(phi_hat).agrees(res.plus)
    assert res.plus_mm.agrees(res.plus) and res.plus_mmm.agrees(res.plus)


def test_factors_have_the_right_shape(th43):
    _, _, _, res = th43
    for i, j, s in res.minus.entries():
        if i != j:
            assert all(k < 0 for k in s.coeffs), (i, j)
    for _, _, s in res.plus.entries():
        assert min(s.coeffs, default=0) >= 0


@pytest.mark.parametrize("seed", [TH43, LADDER3])
def test_beta_forms(seed):
    basis = coideal_closure([seed])
    phi = toy_character(CFG)
    res = atkinson_factorize(psi(phi, basis))
    z0 = z0_matrix(basis)
    b1 = beta_matrix(res.minus, z0)
    assert b1.agrees(beta_matrix_commutator(res.minus, z0))
    assert b1.agrees(beta_matrix_bch(res.minus, z0))
    assert b1.agrees(beta_psi(phi, basis))
    assert b1.constant_entries()


def test_beta_entries_th43(th43):
    basis, _, _, res = th43
    b = beta_matrix(res.minus, z0_matrix(basis))
    want = {(1, 0): 1, (2, 1): 1, (3, 0): -sp.pi**2 / 6, (3, 2): 2, (4, 3): 3}
    for i, j, s in b.entries():
        assert sp.simplify(series_to_sympy(s) - want.get((i, j), 0)) == 0, (i, j)


def test_scattering_routes(th43):
    basis, phi, _, res = th43
    beta = beta_matrix(res.minus, z0_matrix(basis))
    assert scattering_limit(res.minus, basis).agrees(res.minus)
    assert scattering_spectral(beta, basis).agrees(res.minus)
    assert scattering_psi(birkhoff_decompose(phi).minus, basis).agrees(res.minus)


def test_unipotent_exp_log_roundtrip(th43):
    _, _, phi_hat, _ = th43
    lg = phi_hat.log_unipotent()
    assert lg.exp().agrees(phi_hat)
    assert (phi_hat * phi_hat.inverse_unipotent()).agrees(TriMatrix.identity(phi_hat.n))


# Rota-Baxter property of entrywise minimal subtraction on matrices


@st.composite
def tri_matrices(draw, n=3):
    def entry():
        cs = draw(st.dictionaries(st.integers(-3, 3), st.fractions(-4, 4, max_denominator=5), max_size=3))
        return LaurentSeries({k: SymPoly.const(v) for k, v in cs.items()}, lo=-3, hi=5)

    return TriMatrix.from_function(n, lambda i, j: entry())


@given(tri_matrices(), tri_matrices())
@settings(max_examples=30, deadline=None)
def test_matrix_rota_baxter(a, b):
    lhs = a.rb() * b.rb()
    rhs = (a.rb() * b + a * b.rb() - a * b).rb()
    assert lhs.agrees(rhs)
    # the complementary projection satisfies the weight -1 relation too
    lhs_t = a.rb_tilde() * b.rb_tilde()
    rhs_t = (a.rb_tilde() * b + a * b.rb_tilde() - a * b).rb_tilde()
    assert lhs_t.agrees(rhs_t)
