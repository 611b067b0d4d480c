"""Linear maps from the tree Hopf algebra to Laurent series.

A :class:`LinearMap` is determined by its values on trees (characters and
infinitesimal characters) or on forests (general maps).  Convolution,
star-inverse, ``exp``/``log`` for the convolution product, the toy-model
character, the grading flow and the renormalization group live here.
"""

from __future__ import annotations

from typing import Callable, Iterable

from gmpy2 import mpq

from .config import DEFAULT, Config
from .forests import UNIT, Forest, Tree, enumerate_forests, enumerate_trees
from .hopf import _tree_coproduct, antipode, as_element, forest_coproduct
from .coeff_series import (
    LaurentSeries,
    SeriesError,
    SymPoly,
    L,
    Q,
    bn_series,
    eval_at_zero,
    residue,
)

__all__ = [
    "LinearMap",
    "CHARACTER",
    "INFINITESIMAL",
    "GENERAL",
    "counit_map",
    "zero_map",
    "convolve",
    "lin_comb",
    "star_inverse",
    "star_inverse_geometric",
    "exp_star",
    "log_star",
    "toy_character",
    "compose_grading",
    "z_times",
    "scale_flow",
    "flow_factor",
    "rtilde",
    "diff_tau_map",
    "u_operator",
    "h_flow",
    "renorm_group",
    "beta_scalar",
    "beta_expressions",
    "renormalized_at_zero",
    "rg_generator_check",
    "residue_character",
    "maps_agree",
    "basis_forests",
    "basis_trees",
    "NotInvertibleError",
    "ConsistencyError",
]

CHARACTER = "character"
INFINITESIMAL = "infinitesimal"
GENERAL = "general"

_ONE = LaurentSeries.one()
_ZERO = LaurentSeries.zero()


class NotInvertibleError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two computations that must agree did not."""


class LinearMap:
    """Linear map H -> Laurent series, memoized.

    ``kind`` decides how ``fn`` is read:

    * ``character``: ``fn(tree)``; extended multiplicatively, 1 on the unit;
    * ``infinitesimal``: ``fn(tree)``; zero on the unit and on products;
    * ``general``: ``fn(forest)`` for every forest, the unit included.

    The cache is a plain dict; concurrent callers may at worst compute a value
    twice, and values are immutable.
    """

    __slots__ = ("kind", "name", "_fn", "_cache")

    def __init__(self, fn: Callable, kind: str = GENERAL, name: str = ""):
        if kind not in (CHARACTER, INFINITESIMAL, GENERAL):
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.name = name
        self._fn = fn
        self._cache: dict = {}

    def tree(self, t: Tree) -> LaurentSeries:
        if self.kind == GENERAL:
            return self.forest(Forest((t,)))
        v = self._cache.get(t)
        if v is None:
            v = self._fn(t)
            self._cache[t] = v
        return v

    def forest(self, f: Forest) -> LaurentSeries:
        if self.kind == GENERAL:
            v = self._cache.get(f)
            if v is None:
                v = self._fn(f)
                self._cache[f] = v
            return v
        n = len(f.trees)
        if n == 0:
            return _ONE if self.kind == CHARACTER else _ZERO
        if n == 1:
            return self.tree(f.trees[0])
        if self.kind == INFINITESIMAL:
            return _ZERO
        v = self._cache.get(f)
        if v is None:
            v = _ONE
            for t in f.trees:
                v = v * self.tree(t)
            self._cache[f] = v
        return v

    def __call__(self, x) -> LaurentSeries:
        if isinstance(x, Tree):
            return self.tree(x)
        if isinstance(x, Forest):
            return self.forest(x)
        x = as_element(x)
        out = _ZERO
        for f, c in x.terms.items():
            out = out + self.forest(f).scale(c)
        return out

    def unit_value(self) -> LaurentSeries:
        return self.forest(UNIT)

    def __add__(self, other: LinearMap) -> LinearMap:
        return lin_comb((1, self), (1, other))

    def __sub__(self, other: LinearMap) -> LinearMap:
        return lin_comb((1, self), (-1, other))

    def __neg__(self) -> LinearMap:
        return lin_comb((-1, self))

    def __mul__(self, other: LinearMap) -> LinearMap:
        return convolve(self, other)

    def __repr__(self) -> str:
        return f"LinearMap({self.name or '?'}, {self.kind})"


def counit_map() -> LinearMap:
    """The convolution unit ``e = eta o eps``."""
    return LinearMap(lambda t: _ZERO, CHARACTER, "e")


def zero_map() -> LinearMap:
    return LinearMap(lambda t: _ZERO, INFINITESIMAL, "0")


def lin_comb(*pairs: tuple[object, LinearMap]) -> LinearMap:
    """``sum c_i f_i``; infinitesimal if every summand is."""
    pairs = tuple((Q(c), f) for c, f in pairs)
    if all(f.kind == INFINITESIMAL for _, f in pairs):
        return LinearMap(lambda t: _sum(f.tree(t).scale(c) for c, f in pairs), INFINITESIMAL)
    return LinearMap(lambda x: _sum(f.forest(x).scale(c) for c, f in pairs), GENERAL)


def _sum(items: Iterable[LaurentSeries]) -> LaurentSeries:
    out = _ZERO
    for s in items:
        out = out + s
    return out


def _convolve_over(d, f: LinearMap, g: LinearMap) -> LaurentSeries:
    out = _ZERO
    for (a, b), c in d.terms.items():
        fa = f.forest(a)
        if fa.is_zero() and fa.is_exact():
            continue
        gb = g.forest(b)
        if gb.is_zero() and gb.is_exact():
            continue
        out = out + (fa * gb).scale(c)
    return out


def convolve(f: LinearMap, g: LinearMap) -> LinearMap:
    """``(f * g)(x) = sum f(x') g(x'')`` over the full coproduct."""
    if f.kind == CHARACTER and g.kind == CHARACTER:
        # characters form a group: evaluate on trees, extend multiplicatively
        return LinearMap(lambda t: _convolve_over(_tree_coproduct(t), f, g), CHARACTER,
                         f"({f.name}*{g.name})")
    return LinearMap(lambda x: _convolve_over(forest_coproduct(x), f, g), GENERAL, f"({f.name}*{g.name})")


def _check_unital(f: LinearMap) -> None:
    u = f.unit_value()
    if not u.agrees(_ONE):
        raise NotInvertibleError(f"{f!r} is not unital: f(1) = {u}")


def star_inverse(f: LinearMap) -> LinearMap:
    """Convolution inverse: ``f o S`` for characters, geometric series otherwise."""
    _check_unital(f)
    if f.kind == CHARACTER:
        return LinearMap(lambda t: f(antipode(t)), CHARACTER, f"{f.name}^-1")
    return star_inverse_geometric(f)


class _Powers:
    """Lazily built convolution powers ``a^{*k}`` of a map killing the unit."""

    def __init__(self, a: LinearMap):
        self.powers = [counit_map(), a]
        self.a = a

    def get(self, k: int) -> LinearMap:
        while len(self.powers) <= k:
            self.powers.append(convolve(self.powers[-1], self.a))
        return self.powers[k]


def star_inverse_geometric(f: LinearMap) -> LinearMap:
    """``e + sum_k (e - f)^{*k}``; on degree-n forests the sum stops at k = n."""
    _check_unital(f)
    pw = _Powers(counit_map() - f)
    return LinearMap(lambda x: _sum(pw.get(k).forest(x) for k in range(x.degree + 1)), GENERAL,
                     f"{f.name}^-1")


def exp_star(xi: LinearMap) -> LinearMap:
    if not xi.unit_value().is_zero():
        raise ValueError("exp_star needs xi(1) = 0")
    pw = _Powers(xi)

    def value(x: Forest) -> LaurentSeries:
        out = _ZERO
        fact = 1
        for k in range(x.degree + 1):
            if k:
                fact *= k
            out = out + pw.get(k).forest(x).scale(mpq(1, fact))
        return out

    return LinearMap(value, GENERAL, f"exp({xi.name})")


def log_star(f: LinearMap) -> LinearMap:
    _check_unital(f)
    pw = _Powers(f - counit_map())

    def value(x: Forest) -> LaurentSeries:
        out = _ZERO
        for k in range(1, x.degree + 1):
            out = out + pw.get(k).forest(x).scale(mpq((-1) ** (k + 1), k))
        return out

    return LinearMap(value, GENERAL, f"log({f.name})")


def toy_character(config: Config = DEFAULT, *, with_log: bool = True) -> LinearMap:
    """``t -> (a/mu)^{-z|t|} prod_v B_{|t_v|}`` with ``L = log(a/mu)`` formal.

    ``with_log=False`` drops the mass factor (``L = 0``).
    """
    hi = config.work_hi

    def value(t: Tree) -> LaurentSeries:
        v = _ONE
        for sub in t.vertices():
            v = v * bn_series(sub.degree, hi)
        if with_log:
            v = v * LaurentSeries.monomial(L.scale(-t.degree), 1).exp(hi)
        return v

    return LinearMap(value, CHARACTER, "phi")


def compose_grading(f: LinearMap) -> LinearMap:
    """``f o Y``."""
    kind = INFINITESIMAL if f.kind == INFINITESIMAL else GENERAL
    if kind == INFINITESIMAL:
        return LinearMap(lambda t: f.tree(t).scale(t.degree), kind, f"{f.name}Y")
    return LinearMap(lambda x: f.forest(x).scale(x.degree), kind, f"{f.name}Y")


def z_times(f: LinearMap) -> LinearMap:
    """Pointwise multiplication by ``z``."""
    if f.kind == CHARACTER:
        return LinearMap(lambda x: f.forest(x).shift(1), GENERAL, f"z{f.name}")
    if f.kind == INFINITESIMAL:
        return LinearMap(lambda t: f.tree(t).shift(1), INFINITESIMAL, f"z{f.name}")
    return LinearMap(lambda x: f.forest(x).shift(1), GENERAL, f"z{f.name}")


def flow_factor(n: int, t, config: Config) -> LaurentSeries:
    """``exp(t n z)`` for rational ``t`` or a TAU-polynomial ``t``."""
    if n == 0:
        return _ONE
    if isinstance(t, SymPoly):
        arg = LaurentSeries({1: t.scale(n)}, tau_prec=config.tau_cap)
        return arg.exp()
    t = Q(t)
    if t == 0:
        return _ONE
    return LaurentSeries.monomial(t * n, 1).exp(config.work_hi)


def scale_flow(f: LinearMap, t, config: Config = DEFAULT) -> LinearMap:
    """``f^t(x) = exp(t z |x|) f(x)``; ``t`` rational or a TAU polynomial."""
    if f.kind == GENERAL:
        return LinearMap(lambda x: flow_factor(x.degree, t, config) * f.forest(x), GENERAL, f"{f.name}^t")
    return LinearMap(lambda s: flow_factor(s.degree, t, config) * f.tree(s), f.kind, f"{f.name}^t")


def diff_tau_map(f: LinearMap) -> LinearMap:
    """``x -> d/dTAU f(x)``."""
    return LinearMap(lambda x: f.forest(x).diff_tau(), GENERAL, f"d{f.name}")


def rtilde(phi: LinearMap) -> LinearMap:
    """The map defined by ``phi o Y = phi * R(phi)``: ``phi^{-1} * (phi o Y)``."""
    return convolve(star_inverse(phi), compose_grading(phi))


def u_operator(gamma: LinearMap, delta: LinearMap) -> LinearMap:
    """``U_gamma(delta) = gamma * delta + z (delta o Y)``."""
    return convolve(gamma, delta) + z_times(compose_grading(delta))


def h_flow(phi: LinearMap, t, config: Config = DEFAULT) -> LinearMap:
    """``h_t = phi^{-1} * phi^t``, so that ``phi^t = phi * h_t``."""
    return convolve(star_inverse(phi), scale_flow(phi, t, config))


def renorm_group(phi: LinearMap, config: Config = DEFAULT) -> Callable[[object], LinearMap]:
    """``t -> F_t`` with ``F_t(x) = lim_{z->0} h_t(x)``.

    A pole surviving in ``h_t`` means ``phi`` is not local (or the window is
    too small) and raises :class:`SeriesError`.
    """

    def at(t) -> LinearMap:
        h = h_flow(phi, t, config)

        def value(tr: Tree) -> LaurentSeries:
            try:
                return LaurentSeries.const(eval_at_zero(h.tree(tr)))
            except SeriesError as exc:
                raise SeriesError(f"F_t({tr}): phi not local or insufficient window ({exc})") from exc

        return LinearMap(value, CHARACTER, f"F_{t}")

    return at


def residue_character(phi: LinearMap, config: Config = DEFAULT) -> LinearMap:
    """Infinitesimal character ``t -> Res phi(t)`` (constant values)."""
    return LinearMap(lambda t: LaurentSeries.const(residue(phi.tree(t))), INFINITESIMAL, f"Res {phi.name}")


def beta_expressions(phi: LinearMap, trees: Iterable[Tree], pair=None) -> dict[Tree, tuple[SymPoly, SymPoly, SymPoly]]:
    """``(Res R(phi), Res(phi_-^{-1} o Y), -Res(phi_- o Y))`` per tree, unchecked."""
    from .birkhoff import birkhoff_decompose

    if pair is None:
        pair = birkhoff_decompose(phi)
    r = rtilde(phi)
    minv_y = compose_grading(star_inverse(pair.minus))
    m_y = compose_grading(pair.minus)
    return {t: (residue(r.tree(t)), residue(minv_y.tree(t)), -residue(m_y.tree(t))) for t in trees}


def renormalized_at_zero(pair) -> LinearMap:
    """The scalar character ``x -> phi_+(x)(0)``."""
    return LinearMap(lambda t: LaurentSeries.const(eval_at_zero(pair.plus.tree(t))), CHARACTER, "phi_+(0)")


def beta_scalar(phi: LinearMap, trees: Iterable[Tree], pair=None) -> dict[Tree, SymPoly]:
    """Beta function of ``phi`` on ``trees``, read off the counter-term.

    ``Res(phi_-^{-1} o Y)`` and ``-Res(phi_- o Y)`` must agree and be free of
    ``L`` and TAU.  ``Res R(phi)`` (the generator of ``F_t``) is not returned:
    it equals this value conjugated by ``phi_+(0)`` and differs from it as
    soon as ``phi_+(0) != e`` (see :func:`rg_generator_check`).
    """
    out = {}
    for t, (_, b2, b3) in beta_expressions(phi, trees, pair).items():
        if b2 != b3:
            raise ConsistencyError(f"beta({t}) disagrees: {b2} | {b3}")
        if b2.degree("L") > 0 or b2.degree("tau") > 0:
            raise ConsistencyError(f"beta({t}) = {b2} depends on L or TAU")
        out[t] = b2
    return out


def rg_generator_check(phi: LinearMap, trees: Iterable[Tree], pair=None) -> tuple[bool, Tree | None]:
    """``Res R(phi) = phi_+(0)^{-1} * beta * phi_+(0)`` on ``trees``.

    Returns ``(ok, first failing tree)``.
    """
    from .birkhoff import birkhoff_decompose

    trees = list(trees)
    if pair is None:
        pair = birkhoff_decompose(phi)
    vals = beta_scalar(phi, basis_trees(max(t.degree for t in trees)), pair)
    beta = LinearMap(lambda t: LaurentSeries.const(vals[t]), INFINITESIMAL, "beta")
    a = renormalized_at_zero(pair)
    conj = convolve(convolve(star_inverse(a), beta), a)
    r = rtilde(phi)
    for t in trees:
        if not LaurentSeries.const(residue(r.tree(t))).agrees(conj.tree(t)):
            return False, t
    return True, None


def basis_trees(max_degree: int) -> list[Tree]:
    return [t for n in range(1, max_degree + 1) for t in enumerate_trees(n)]


def basis_forests(max_degree: int, include_unit: bool = True) -> list[Forest]:
    start = 0 if include_unit else 1
    return [f for n in range(start, max_degree + 1) for f in enumerate_forests(n)]


def maps_agree(f: LinearMap, g: LinearMap, forests: Iterable[Forest], upto=None) -> bool:
    """Window-wise equality of two maps on the given forests."""
    return all(f.forest(x).agrees(g.forest(x), upto=upto) for x in forests)
