"""Named identity checks, grouped by acceptance criterion.

Each check returns ``(ok, detail)``.  Checks flagged ``known`` document a
statement from the literature that does not hold as written; they are
reported but do not fail the run (an unexpected pass is reported as such).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from gmpy2 import mpq

from . import golden
from .birkhoff import (
    birkhoff_decompose,
    birkhoff_forest_recursion,
    flow_locality_check,
    locality_check,
)
from .characters import (
    LinearMap,
    basis_forests,
    basis_trees,
    beta_expressions,
    beta_scalar,
    compose_grading,
    convolve,
    counit_map,
    diff_tau_map,
    exp_star,
    h_flow,
    lin_comb,
    log_star,
    maps_agree,
    renorm_group,
    residue_character,
    rg_generator_check,
    rtilde,
    scale_flow,
    star_inverse,
    star_inverse_geometric,
    toy_character,
    u_operator,
    z_times,
)
from .coeff_series import (
    LaurentSeries,
    SymPoly,
    TAU,
    bn_series,
    holomorphic_part,
    minimal_subtraction,
)
from .config import DEFAULT, Config
from .forests import (
    DOT,
    UNIT,
    parse_forest,
    parse_tree,
    tree_factorial,
    tree_factorial_by_cuts,
    enumerate_forests,
)
from .hopf import (
    HopfElement,
    TensorElement,
    antipode,
    antipode_geometric,
    antipode_right,
    coassociativity_sides,
    coproduct,
    counit,
    parse_element,
    product,
)
from .matrix_rep import (
    TriMatrix,
    aplus_flow_check,
    atkinson_factorize,
    atkinson_identity,
    bch_generator,
    beta_matrix,
    beta_matrix_bch,
    beta_matrix_commutator,
    beta_psi,
    coideal_closure,
    coproduct_matrix,
    matrix_coassociativity,
    nonrecursive_entries,
    psi,
    scattering_limit,
    scattering_psi,
    scattering_spectral,
    z0_matrix,
)

__all__ = ["CheckResult", "Report", "run_checks", "CRITERIA"]

RNG_SEED = 20061
RB_SAMPLES = 100

CRITERIA = {
    1: "worked examples",
    2: "Hopf axioms",
    3: "Rota-Baxter relations",
    4: "Birkhoff decomposition",
    5: "matrix and scalar Birkhoff agree",
    6: "beta function",
    7: "flow equations",
    8: "renormalization group",
    9: "scattering formula",
}


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    status: str  # PASS, FAIL, KNOWN-FAIL, UNEXPECTED-PASS, ERROR
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status in ("FAIL", "ERROR", "UNEXPECTED-PASS")


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.results)

    def by_criterion(self, k: int) -> list[CheckResult]:
        return [r for r in self.results if r.criterion == k]

    def text(self) -> str:
        lines = []
        for r in self.results:
            line = f"[{r.criterion}] {r.status:<10} {r.name}"
            if r.detail:
                line += f": {r.detail}"
            lines.append(line)
        checked = [r for r in self.results if r.status not in ("KNOWN-FAIL",)]
        known = len(self.results) - len(checked)
        failed = sum(r.failed for r in self.results)
        tail = f" ({known} known discrepancy reported)" if known == 1 else (
            f" ({known} known discrepancies reported)" if known else "")
        if failed:
            lines.append(f"{failed} of {len(checked)} identities failed{tail}")
        else:
            lines.append(f"all {len(checked)} identities hold{tail}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "checks": [r.__dict__ for r in self.results],
            },
            indent=2,
            sort_keys=True,
        )


class Context:
    """Shared, lazily built objects for one run."""

    def __init__(self, config: Config):
        self.config = config
        self.n = config.max_degree

    @cached_property
    def phi(self) -> LinearMap:
        return toy_character(self.config)

    @cached_property
    def pair(self):
        return birkhoff_decompose(self.phi)

    @cached_property
    def forests(self):
        return basis_forests(self.n)

    @cached_property
    def basis5(self):
        return coideal_closure([parse_tree(golden.COPRODUCT_MATRIX_SEED)])

    @cached_property
    def basis_l3(self):
        return coideal_closure([parse_tree("[[[]]]")])

    def matrices(self, basis):
        phi_hat = psi(self.phi, basis)
        return phi_hat, atkinson_factorize(phi_hat)


# --- helpers ---------------------------------------------------------------------

def _first_bad(items, pred):
    for x in items:
        if not pred(x):
            return x
    return None


def _result(bad, what="") -> tuple[bool, str]:
    if bad is None:
        return True, ""
    return False, f"fails at {bad}{what}"


def _alpha_b(k: int, bs, hi: int) -> LaurentSeries:
    v = LaurentSeries.monomial(SymPoly.monomial(-k, L=1), 1).exp(hi)
    for n in bs:
        v = v * bn_series(n, hi)
    return v


# --- criterion 1 -----------------------------------------------------------------

def c1_coproducts(ctx):
    def ok(key):
        want = TensorElement.from_pairs((c, parse_forest(a), parse_forest(b)) for c, a, b in golden.COPRODUCTS[key])
        return coproduct(parse_forest(key)) == want

    return _result(_first_bad(sorted(golden.COPRODUCTS), ok))


def c1_antipodes(ctx):
    return _result(_first_bad(sorted(golden.ANTIPODES),
                              lambda k: antipode(parse_tree(k)) == parse_element(golden.ANTIPODES[k])))


def c1_factorials(ctx):
    def ok(k):
        t = parse_tree(k)
        return tree_factorial(t) == golden.TREE_FACTORIALS[k] == tree_factorial_by_cuts(t)

    return _result(_first_bad(sorted(golden.TREE_FACTORIALS), ok))


def c1_matrix(ctx):
    m = coproduct_matrix(ctx.basis5)
    want = golden.COPRODUCT_MATRIX
    bad = _first_bad(
        [(i, j) for i in range(5) for j in range(5)],
        lambda ij: m[ij] == (HopfElement() if want[ij[0]][ij[1]] == "0" else parse_element(want[ij[0]][ij[1]])),
    )
    return _result(bad)


def c1_matrix_coassociativity(ctx):
    ok = matrix_coassociativity(coproduct_matrix(ctx.basis5))
    return ok, "" if ok else "Delta(M_ij) != sum_k M_ik (x) M_kj"


def c1_z0(ctx):
    z0 = z0_matrix(ctx.basis5)
    ok = z0.agrees(TriMatrix.diag([LaurentSeries.const(d) for d in golden.Z0_DIAGONAL]))
    return ok, "" if ok else "diagonal mismatch"


def c1_toy_values(ctx):
    hi = ctx.config.work_hi
    bad = _first_bad(sorted(golden.TOY_VALUES),
                     lambda k: ctx.phi.tree(parse_tree(k)).agrees(_alpha_b(*golden.TOY_VALUES[k], hi), upto=0))
    if bad is None:
        head = ctx.phi.tree(DOT)
        ok = head.coeff(-1) == SymPoly.const(1) and head.coeff(1).u_zero() == (
            SymPoly.monomial(mpq(1, 6), pi2=1) + SymPoly.monomial(mpq(1, 2), L=2))
        return ok, "" if ok else f"phi([]) = {head}"
    return _result(bad)


def c1_psi_display(ctx):
    phi_hat = psi(ctx.phi, ctx.basis5)
    hi = ctx.config.work_hi

    def ok(ij):
        i, j = ij
        entry = phi_hat[i - 1, j - 1]
        expected = golden.PSI_TOY.get(ij)
        if i == j:
            return entry.agrees(LaurentSeries.one())
        if expected is None:
            return not entry.coeffs
        c, k, bs = expected
        return entry.agrees(_alpha_b(k, bs, hi).scale(c), upto=0)

    return _result(_first_bad([(i, j) for i in range(1, 6) for j in range(1, i + 1)], ok))


# --- criterion 2 -----------------------------------------------------------------

def _all_forests(ctx):
    return [f for n in range(ctx.n + 1) for f in enumerate_forests(n)]


def c2_coassoc(ctx):
    return _result(_first_bad(_all_forests(ctx), lambda f: (lambda s: s[0] == s[1])(coassociativity_sides(f))))


def c2_counit(ctx):
    def ok(f):
        d = coproduct(f)
        left = HopfElement()
        right = HopfElement()
        for (a, b), c in d.terms.items():
            if a.is_unit():
                left = left + HopfElement({b: c})
            if b.is_unit():
                right = right + HopfElement({a: c})
        x = HopfElement.of(f)
        return left == x and right == x

    return _result(_first_bad(_all_forests(ctx), ok))


def c2_antipode_axiom(ctx):
    def ok(f):
        d = coproduct(f)
        eps = HopfElement({UNIT: counit(f)})
        left = HopfElement()
        right = HopfElement()
        for (a, b), c in d.terms.items():
            left = left + product(antipode(a), b) * c
            right = right + product(a, antipode(b)) * c
        return left == eps and right == eps

    return _result(_first_bad(_all_forests(ctx), ok))


def c2_antipodes_agree(ctx):
    def ok(f):
        s = antipode(f)
        return s == antipode_right(f) and s == antipode_geometric(f)

    return _result(_first_bad(_all_forests(ctx), ok))


# --- criterion 3 -----------------------------------------------------------------

def _random_series(rng: random.Random, lo: int = -3, hi: int = 4) -> LaurentSeries:
    coeffs = {}
    for k in range(lo, hi + 1):
        if rng.random() < 0.7:
            poly = SymPoly()
            for _ in range(rng.randint(1, 2)):
                poly = poly + SymPoly.monomial(mpq(rng.randint(-9, 9), rng.randint(1, 5)),
                                               pi2=rng.randint(0, 1), L=rng.randint(0, 1))
            if poly.terms:
                coeffs[k] = poly
    return LaurentSeries(coeffs, lo=lo, hi=hi)


def _random_matrix(rng: random.Random, n: int = 4) -> TriMatrix:
    return TriMatrix.from_function(n, lambda i, j: _random_series(rng))


def _rb_scalar(a, b) -> bool:
    pa, pb = minimal_subtraction(a), minimal_subtraction(b)
    return (pa * pb).agrees(minimal_subtraction(pa * b + a * pb - a * b), upto=-1)


def _rb_bis_scalar(a, b) -> bool:
    lhs = minimal_subtraction(a * holomorphic_part(b)) + holomorphic_part(minimal_subtraction(a) * b)
    return lhs.agrees(minimal_subtraction(a) * holomorphic_part(b), upto=0)


def c3_rb_scalar(ctx):
    rng = random.Random(RNG_SEED)
    for k in range(RB_SAMPLES):
        a, b = _random_series(rng), _random_series(rng)
        if not (_rb_scalar(a, b) and _rb_bis_scalar(a, b)):
            return False, f"sample {k}"
    return True, f"{RB_SAMPLES} samples"


def c3_split_idempotent(ctx):
    rng = random.Random(RNG_SEED + 1)
    for k in range(RB_SAMPLES):
        a = _random_series(rng)
        p = minimal_subtraction(a)
        if not ((p + holomorphic_part(a)).agrees(a, upto=4) and minimal_subtraction(p).agrees(p)
                and holomorphic_part(holomorphic_part(a)).agrees(holomorphic_part(a), upto=4)):
            return False, f"sample {k}"
    return True, f"{RB_SAMPLES} samples"


def c3_rb_matrix(ctx):
    rng = random.Random(RNG_SEED + 2)
    for k in range(RB_SAMPLES):
        a, b = _random_matrix(rng), _random_matrix(rng)
        ra, rb = a.rb(), b.rb()
        if not (ra * rb).agrees((ra * b + a * rb - a * b).rb()):
            return False, f"sample {k} (RBR)"
        lhs = (a * b.rb_tilde()).rb() + (ra * b).rb_tilde()
        if not lhs.agrees(ra * b.rb_tilde()):
            return False, f"sample {k} (RBR bis)"
        if not (ra + a.rb_tilde()).agrees(a) or not ra.rb().agrees(ra):
            return False, f"sample {k} (splitting)"
    return True, f"{RB_SAMPLES} samples"


# --- criterion 4 -----------------------------------------------------------------

def c4_locality(ctx):
    ok, witness = locality_check(ctx.pair, ctx.n)
    return ok, "" if ok else f"counter-term of {witness} has non-pole or L terms"


def c4_flow_locality(ctx):
    ok, witness = flow_locality_check(ctx.phi, min(ctx.n, 4), ctx.config)
    return ok, "" if ok else f"counter-term of {witness} depends on TAU"


def c4_multiplicative(ctx):
    minus, plus = birkhoff_forest_recursion(ctx.phi, ctx.forests)
    return _result(_first_bad(ctx.forests, lambda f: minus[f].agrees(ctx.pair.minus.forest(f))
                              and plus[f].agrees(ctx.pair.plus.forest(f))))


def c4_reconstruction(ctx):
    rec = convolve(star_inverse(ctx.pair.minus), ctx.pair.plus)
    return _result(_first_bad(ctx.forests, lambda f: rec.forest(f).agrees(ctx.phi.forest(f), upto=0)))


def c4_dot(ctx):
    v = ctx.pair.minus.tree(DOT)
    ok = v.agrees(LaurentSeries.monomial(-1, -1)) and v.is_exact()
    return ok, "" if ok else f"phi_-([]) = {v}"


# --- criterion 5 -----------------------------------------------------------------

def _for_bases(ctx, fn):
    for name, basis in (("5-element coideal", ctx.basis5), ("ladder coideal", ctx.basis_l3)):
        ok, detail = fn(basis)
        if not ok:
            return False, f"{name}: {detail}"
    return True, ""


def c5_nonrecursive(ctx):
    def check(basis):
        phi_hat, res = ctx.matrices(basis)
        minus, plus_inv = nonrecursive_entries(phi_hat)
        return minus.agrees(res.minus) and plus_inv.agrees(res.plus_inv), "chain sums differ"

    return _for_bases(ctx, check)


def c5_scalar(ctx):
    def check(basis):
        _, res = ctx.matrices(basis)
        ok = res.minus.agrees(psi(ctx.pair.minus, basis)) and res.plus.agrees(psi(ctx.pair.plus, basis))
        return ok, "Psi of scalar components differs"

    return _for_bases(ctx, check)


def c5_atkinson(ctx):
    def check(basis):
        phi_hat, res = ctx.matrices(basis)
        return atkinson_identity(phi_hat, res), "X(1+a)Y != 1"

    return _for_bases(ctx, check)


def c5_plus_variants(ctx):
    def check(basis):
        _, res = ctx.matrices(basis)
        return res.plus.agrees(res.plus_mm) and res.plus.agrees(res.plus_mmm), "plus recursions differ"

    return _for_bases(ctx, check)


def c5_exp_form(ctx):
    def check(basis):
        _, res = ctx.matrices(basis)
        x = bch_generator(res.minus)
        lp = res.plus.log_unipotent()
        ok = (x.rb().agrees(x) and lp.rb_tilde().agrees(lp) and (-x).exp().agrees(res.minus)
              and x.exp().agrees(res.minus.inverse_unipotent()))
        return ok, "exp/log form"

    return _for_bases(ctx, check)


def c5_psi_morphism(ctx):
    phi = ctx.phi
    inv = star_inverse(phi)
    ex = exp_star(residue_character(phi))
    maps = [phi, inv, counit_map(), ex]
    b = ctx.basis5
    m = coproduct_matrix(b)
    for f in maps:
        for g in maps:
            if not psi(convolve(f, g), b, m).agrees(psi(f, b, m) * psi(g, b, m)):
                return False, f"Psi[{f.name} * {g.name}]"
    if not psi(inv, b, m).agrees(psi(phi, b, m).inverse_unipotent()):
        return False, "Psi[phi^-1]"
    if m.inverse_unipotent() != m.map(antipode):
        return False, "M^-1 != Psi[S]"
    return True, f"{len(maps) ** 2} pairs"


def c5_normal_coordinates(ctx):
    b = ctx.basis5
    log_m = coproduct_matrix(b).log_unipotent()
    lhs = psi(ctx.phi, b).log_unipotent()
    rhs = TriMatrix.from_function(len(b), lambda i, j: ctx.phi(log_m[i, j]))
    ok = lhs.agrees(rhs, upto=0)
    return ok, "" if ok else "log Psi[phi] != phi(log M)"


def c5_grading_commutator(ctx):
    b = ctx.basis5
    z0 = z0_matrix(b)
    ok = psi(ctx.phi, b).commutator(-z0).agrees(psi(compose_grading(ctx.phi), b))
    return ok, "" if ok else "[Psi f, Psi(-Z0)] != Psi(f o Y)"


# --- criterion 6 -----------------------------------------------------------------

def c6_matrix_forms(ctx):
    def check(basis):
        _, res = ctx.matrices(basis)
        z0 = z0_matrix(basis)
        b1 = beta_matrix(res.minus, z0)
        ok = b1.agrees(beta_matrix_commutator(res.minus, z0)) and b1.agrees(beta_matrix_bch(res.minus, z0))
        return ok, "forms differ"

    return _for_bases(ctx, check)


def c6_matrix_vs_scalar(ctx):
    def check(basis):
        _, res = ctx.matrices(basis)
        ok = beta_matrix(res.minus, z0_matrix(basis)).agrees(beta_psi(ctx.phi, basis, ctx.pair))
        return ok, "beta matrix != Psi[beta]"

    return _for_bases(ctx, check)


def c6_counterterm_forms(ctx):
    vals = beta_expressions(ctx.phi, basis_trees(ctx.n), ctx.pair)
    return _result(_first_bad(sorted(vals), lambda t: vals[t][1] == vals[t][2]))


def c6_dot(ctx):
    v = beta_scalar(ctx.phi, [DOT], ctx.pair)[DOT]
    ok = v == SymPoly.const(1) and ctx.pair.minus.tree(DOT).agrees(LaurentSeries.monomial(-1, -1))
    return ok, "" if ok else f"beta([]) = {v}"


def c6_rg_generator(ctx):
    ok, witness = rg_generator_check(ctx.phi, basis_trees(min(ctx.n, 4)), ctx.pair)
    return ok, "" if ok else f"fails at {witness}"


def c6_altbeta_literal(ctx):
    vals = beta_expressions(ctx.phi, basis_trees(min(ctx.n, 4)), ctx.pair)
    bad = _first_bad(sorted(vals), lambda t: vals[t][0] == vals[t][1] == vals[t][2])
    if bad is None:
        return True, ""
    r, a, b = vals[bad]
    return False, f"at {bad}: Res R(phi) = {r}, counter-term forms = {a}"


# --- criterion 7 -----------------------------------------------------------------

def _flow_forests(ctx):
    return basis_forests(min(ctx.n, 4))


def c7_matrix_flow(ctx):
    phi_hat, _ = ctx.matrices(ctx.basis5)
    rep = aplus_flow_check(phi_hat, ctx.basis5, ctx.config)
    return rep.ok, "; ".join(rep.failures())


def c7_gen(ctx):
    flowed = scale_flow(ctx.phi, TAU, ctx.config)
    zy = z_times(compose_grading(ctx.phi))
    at0 = diff_tau_map(flowed)
    ok = all(at0.forest(f).subs_tau(0).agrees(zy.forest(f)) for f in _flow_forests(ctx))
    return ok, "" if ok else "d/dTAU phi^TAU at 0 != z phi o Y"


def c7_gen2(ctx):
    h = h_flow(ctx.phi, TAU, ctx.config)
    lhs = diff_tau_map(h)
    rhs = convolve(h, z_times(rtilde(h))) + convolve(z_times(rtilde(ctx.phi)), h)
    return _result(_first_bad(_flow_forests(ctx), lambda f: lhs.forest(f).agrees(rhs.forest(f), upto=0)))


def c7_lemma_fix(ctx):
    phi = ctx.phi
    gamma = z_times(rtilde(phi))
    delta = counit_map()
    for n in range(4):
        lhs = LinearMap(lambda x, n=n: phi.forest(x).shift(n).scale(x.degree ** n), name=f"z^{n} phi Y^{n}")
        rhs = convolve(phi, delta)
        bad = _first_bad(_flow_forests(ctx), lambda f: lhs.forest(f).agrees(rhs.forest(f), upto=0))
        if bad is not None:
            return False, f"n = {n} at {bad}"
        delta = u_operator(gamma, delta)
    return True, "n = 0..3"


def c7_cocycle(ctx):
    phi = ctx.phi
    pairs = [
        (phi, scale_flow(phi, mpq(1, 2), ctx.config)),
        (star_inverse(ctx.pair.minus), ctx.pair.plus),
        (phi, toy_character(ctx.config, with_log=False)),
    ]
    forests = basis_forests(min(ctx.n, 3))
    for k, (f, g) in enumerate(pairs):
        lhs = rtilde(convolve(f, g))
        rhs = rtilde(g) + convolve(convolve(star_inverse(g), rtilde(f)), g)
        bad = _first_bad(forests, lambda x: lhs.forest(x).agrees(rhs.forest(x), upto=0))
        if bad is not None:
            return False, f"pair {k} at {bad}"
    return True, f"{len(pairs)} pairs"


def c7_star_algebra(ctx):
    phi = ctx.phi
    forests = basis_forests(min(ctx.n, 4))
    inv = star_inverse(phi)
    if not maps_agree(inv, star_inverse_geometric(phi), forests):
        return False, "antipode and geometric inverses differ"
    xi = residue_character(phi)
    ex = exp_star(xi)
    if not maps_agree(log_star(ex), xi, forests):
        return False, "log(exp(xi)) != xi"
    prods = [(a, b) for a in forests for b in forests if a.degree + b.degree <= min(ctx.n, 4)]
    if any(not ex.forest(a * b).agrees(ex.forest(a) * ex.forest(b)) for a, b in prods):
        return False, "exp of an infinitesimal character is not multiplicative"
    y = compose_grading
    lhs = y(convolve(phi, inv))
    rhs = lin_comb((1, convolve(y(phi), inv)), (1, convolve(phi, y(inv))))
    if not maps_agree(lhs, rhs, forests, upto=0):
        return False, "f -> f o Y is not a derivation"
    return True, ""


# --- criterion 8 -----------------------------------------------------------------

def c8_group_law(ctx):
    f = renorm_group(ctx.phi, ctx.config)
    s, t = mpq(1, 2), mpq(1, 3)
    lhs = f(s + t)
    rhs = convolve(f(s), f(t))
    return _result(_first_bad(basis_forests(min(ctx.n, 3)), lambda x: lhs.forest(x).agrees(rhs.forest(x))))


def c8_h_law(ctx):
    s, t = mpq(1, 2), mpq(1, 3)
    lhs = h_flow(ctx.phi, s + t, ctx.config)
    rhs = convolve(h_flow(ctx.phi, s, ctx.config), scale_flow(h_flow(ctx.phi, t, ctx.config), s, ctx.config))
    return _result(_first_bad(basis_forests(min(ctx.n, 3)), lambda x: lhs.forest(x).agrees(rhs.forest(x), upto=0)))


# --- criterion 9 -----------------------------------------------------------------

def c9_scattering(ctx):
    b = ctx.basis5
    _, res = ctx.matrices(b)
    beta = beta_matrix(res.minus, z0_matrix(b))
    routes = {
        "product": scattering_limit(res.minus, b),
        "spectral": scattering_spectral(beta, b),
        "Psi": scattering_psi(ctx.pair.minus, b),
    }
    bad = _first_bad(sorted(routes), lambda k: routes[k].agrees(res.minus))
    return (True, "3 routes") if bad is None else (False, f"{bad} route")


Check = tuple[int, str, Callable, bool]

CHECKS: list[Check] = [
    (1, "coproduct examples", c1_coproducts, False),
    (1, "antipode examples", c1_antipodes, False),
    (1, "tree factorials", c1_factorials, False),
    (1, "coproduct matrix of the 5-element coideal", c1_matrix, False),
    (1, "Delta(M_ij) = sum_k M_ik (x) M_kj", c1_matrix_coassociativity, False),
    (1, "Z0 = diag(0,1,2,3,4)", c1_z0, False),
    (1, "toy character values", c1_toy_values, False),
    (1, "Psi[toy phi] display", c1_psi_display, False),
    (2, "coassociativity", c2_coassoc, False),
    (2, "counit", c2_counit, False),
    (2, "antipode axiom", c2_antipode_axiom, False),
    (2, "left, right and geometric antipodes agree", c2_antipodes_agree, False),
    (3, "Rota-Baxter relations for pi", c3_rb_scalar, False),
    (3, "splitting and idempotence", c3_split_idempotent, False),
    (3, "Rota-Baxter relations for matrix R", c3_rb_matrix, False),
    (4, "locality of the counter-term", c4_locality, False),
    (4, "counter-term of phi^TAU is TAU-free", c4_flow_locality, False),
    (4, "forest recursion is multiplicative", c4_multiplicative, False),
    (4, "phi_-^{-1} * phi_+ = phi", c4_reconstruction, False),
    (4, "phi_-([]) = -1/z", c4_dot, False),
    (5, "Atkinson recursion = chain sums", c5_nonrecursive, False),
    (5, "matrix Birkhoff = Psi of scalar Birkhoff", c5_scalar, False),
    (5, "Atkinson identity X(1+a)Y = 1", c5_atkinson, False),
    (5, "three recursions for phi_+ agree", c5_plus_variants, False),
    (5, "exponential form of the factors", c5_exp_form, False),
    (5, "Psi is a homomorphism", c5_psi_morphism, False),
    (5, "log Psi[phi] = phi(log M)", c5_normal_coordinates, False),
    (5, "[Psi f, Psi(-Z0)] = Psi(f o Y)", c5_grading_commutator, False),
    (6, "matrix beta: conjugation = commutator = nested commutators", c6_matrix_forms, False),
    (6, "matrix beta = Psi[scalar beta]", c6_matrix_vs_scalar, False),
    (6, "Res(phi_-^{-1} o Y) = -Res(phi_- o Y)", c6_counterterm_forms, False),
    (6, "beta([]) = 1", c6_dot, False),
    (6, "Res R(phi) = phi_+(0)^{-1} * beta * phi_+(0)", c6_rg_generator, False),
    (6, "Res R(phi) equals the counter-term beta", c6_altbeta_literal, True),
    (7, "matrix flow identities", c7_matrix_flow, False),
    (7, "d/dTAU phi^TAU at 0 = z phi o Y", c7_gen, False),
    (7, "flow equation for h", c7_gen2, False),
    (7, "z^n phi o Y^n = phi * U^n(e)", c7_lemma_fix, False),
    (7, "cocycle for R", c7_cocycle, False),
    (7, "inverse, exp/log and derivation laws", c7_star_algebra, False),
    (8, "F_{s+t} = F_s * F_t", c8_group_law, False),
    (8, "h_{s+t} = h_s * (h_t)^s", c8_h_law, False),
    (9, "scattering limit reproduces phi_-", c9_scattering, False),
]


def run_checks(config: Config = DEFAULT, criteria: set[int] | None = None) -> Report:
    ctx = Context(config)
    out = []
    for crit, name, fn, known in CHECKS:
        if criteria is not None and crit not in criteria:
            continue
        try:
            ok, detail = fn(ctx)
        except Exception as exc:  # reported, never swallowed silently
            out.append(CheckResult(crit, name, "ERROR", f"{type(exc).__name__}: {exc}"))
            continue
        if known:
            status = "UNEXPECTED-PASS" if ok else "KNOWN-FAIL"
        else:
            status = "PASS" if ok else "FAIL"
        out.append(CheckResult(crit, name, status, detail))
    return Report(tuple(out))
