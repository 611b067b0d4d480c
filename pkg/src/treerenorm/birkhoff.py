"""Birkhoff decomposition of characters under minimal subtraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .characters import CHARACTER, LinearMap, basis_trees
from .forests import UNIT, Forest, Tree, admissible_cuts
from .hopf import forest_coproduct
from .coeff_series import LaurentSeries, PrecisionError, holomorphic_part, minimal_subtraction

__all__ = [
    "BirkhoffPair",
    "bogoliubov_bar",
    "birkhoff_decompose",
    "locality_check",
    "is_pole_valued",
    "RecursionOrderError",
    "birkhoff_forest_recursion",
    "flow_locality_check",
]


class RecursionOrderError(RuntimeError):
    """A lower-degree counter-term was requested before it was computed."""


@dataclass(frozen=True)
class BirkhoffPair:
    """``phi = minus^{*-1} * plus``."""

    minus: LinearMap
    plus: LinearMap


def _minus_forest(values: Mapping[Tree, LaurentSeries], f: Forest) -> LaurentSeries:
    out = LaurentSeries.one()
    for t in f.trees:
        try:
            out = out * values[t]
        except KeyError:
            raise RecursionOrderError(f"counter-term of {t} not yet computed") from None
    return out


def bogoliubov_bar(phi: LinearMap, partial_minus: Mapping[Tree, LaurentSeries], x: Tree) -> LaurentSeries:
    """Prepared value ``phi(x) + sum phi_-(x') phi(x'')`` for a tree ``x``.

    ``partial_minus`` must already hold the counter-terms of every tree in
    every pruned forest of ``x``.
    """
    out = phi.tree(x)
    for cut in admissible_cuts(x):
        out = out + _minus_forest(partial_minus, cut.pruned) * phi.tree(cut.cotree)
    return out


def birkhoff_decompose(phi: LinearMap) -> BirkhoffPair:
    """Counter-term ``-pi(Rbar(x))`` and renormalized part ``(1 - pi)(Rbar(x))``.

    Tree values are computed bottom-up by degree and memoized; both factors
    are returned as characters (multiplicative extension).
    """
    if phi.kind != CHARACTER:
        raise TypeError("Birkhoff decomposition needs a character")
    minus_vals: dict[Tree, LaurentSeries] = {}
    bar_vals: dict[Tree, LaurentSeries] = {}

    def prepared(t: Tree) -> LaurentSeries:
        v = bar_vals.get(t)
        if v is None:
            for cut in admissible_cuts(t):
                for s in cut.pruned.trees:
                    minus(s)
            try:
                v = bogoliubov_bar(phi, minus_vals, t)
            except PrecisionError as exc:
                raise PrecisionError(f"{exc}; raise z_hi or the pole bound") from exc
            bar_vals[t] = v
        return v

    def minus(t: Tree) -> LaurentSeries:
        v = minus_vals.get(t)
        if v is None:
            v = -minimal_subtraction(prepared(t))
            minus_vals[t] = v
        return v

    def plus(t: Tree) -> LaurentSeries:
        return holomorphic_part(prepared(t))

    name = phi.name or "phi"
    return BirkhoffPair(LinearMap(minus, CHARACTER, f"{name}_-"), LinearMap(plus, CHARACTER, f"{name}_+"))


def is_pole_valued(f: LinearMap, trees: Iterable[Tree]):
    """First tree whose value has a non-negative ``z``-power or any ``L``; ``None`` if none."""
    for t in trees:
        v = f.tree(t)
        if any(k >= 0 for k in v.coeffs) or v.degree("L") > 0:
            return t
    return None


def locality_check(pair: BirkhoffPair, max_degree: int = 5) -> tuple[bool, Tree | None]:
    """``(True, None)`` if every counter-term up to ``max_degree`` is a pure
    pole polynomial free of ``L``; otherwise ``(False, witness)``."""
    witness = is_pole_valued(pair.minus, basis_trees(max_degree))
    return witness is None, witness


def birkhoff_forest_recursion(phi: LinearMap, forests: Iterable[Forest]) -> tuple[dict, dict]:
    """Counter-term and renormalized values computed directly on forests.

    Uses the full forest coproduct instead of tree values extended
    multiplicatively, so comparing with :func:`birkhoff_decompose` tests that
    the recursion itself produces characters.
    """
    minus: dict[Forest, LaurentSeries] = {UNIT: LaurentSeries.one()}
    plus: dict[Forest, LaurentSeries] = {UNIT: LaurentSeries.one()}

    def solve(f: Forest) -> None:
        if f in minus:
            return
        bar = phi.forest(f)
        for (a, b), c in forest_coproduct(f).terms.items():
            if a.is_unit() or b.is_unit():
                continue
            solve(a)
            bar = bar + (minus[a] * phi.forest(b)).scale(c)
        minus[f] = -minimal_subtraction(bar)
        plus[f] = holomorphic_part(bar)

    for f in forests:
        solve(f)
    return minus, plus


def flow_locality_check(phi: LinearMap, max_degree: int, config) -> tuple[bool, Tree | None]:
    """Counter-terms of ``phi^TAU`` carry no TAU: ``d/dTAU phi_-(TAU) = 0``."""
    from .characters import scale_flow
    from .coeff_series import TAU

    flowed = birkhoff_decompose(scale_flow(phi, TAU, config))
    base = birkhoff_decompose(phi)
    for t in basis_trees(max_degree):
        v = flowed.minus.tree(t)
        if v.degree("tau") > 0 or not v.agrees(base.minus.tree(t)):
            return False, t
    return True, None
