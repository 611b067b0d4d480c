"""The Hopf algebra of non-planar rooted trees over the rationals.

Elements are finite rational combinations of forests.  The coproduct sums
over admissible cuts and is extended multiplicatively to forests; the
antipode is computed by the usual recursions and memoized per tree.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

from gmpy2 import mpq

from .forests import UNIT, Forest, Tree, admissible_cuts, parse_forest
from .coeff_series import Q, SymPoly

__all__ = [
    "HopfElement",
    "TensorElement",
    "TripleTensor",
    "as_element",
    "product",
    "coproduct",
    "forest_coproduct",
    "reduced_coproduct",
    "counit",
    "antipode",
    "antipode_right",
    "antipode_geometric",
    "apply_grading",
    "theta",
    "ExpWeighted",
    "coassociativity_sides",
]

Coefficient = mpq


class HopfElement:
    """Finite rational linear combination of forests (no stored zeros)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Forest, object] | None = None):
        self.terms: dict[Forest, mpq] = {}
        if terms:
            for f, c in terms.items():
                c = Q(c)
                if c != 0:
                    self.terms[f] = c

    @classmethod
    def unit(cls) -> HopfElement:
        return cls({UNIT: 1})

    @classmethod
    def of(cls, x: Union[Tree, Forest], c=1) -> HopfElement:
        f = Forest((x,)) if isinstance(x, Tree) else x
        return cls({f: c})

    @classmethod
    def parse(cls, text: str) -> HopfElement:
        """Inverse of ``str``: e.g. ``"-1 [[][]] + 2 [] [[]]"``."""
        return parse_element(text)

    def __add__(self, other) -> HopfElement:
        other = as_element(other)
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + c
        return HopfElement(out)

    def __neg__(self) -> HopfElement:
        return HopfElement({f: -c for f, c in self.terms.items()})

    def __sub__(self, other) -> HopfElement:
        return self + (-as_element(other))

    def __mul__(self, other) -> HopfElement:
        if isinstance(other, (HopfElement, Tree, Forest)):
            return product(self, other)
        c = Q(other)
        return HopfElement({f: v * c for f, v in self.terms.items()})

    def __rmul__(self, other) -> HopfElement:
        if isinstance(other, (Tree, Forest)):
            return product(other, self)
        return self * other

    def __eq__(self, other) -> bool:
        try:
            return self.terms == as_element(other).terms
        except TypeError:
            return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((f.degree for f in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({f.degree for f in self.terms}) <= 1

    def items(self):
        return sorted(self.terms.items(), key=lambda it: it[0])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (f, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(f) if a == 1 else f"{_fmt_q(a)} {f}"
            if i == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"HopfElement({self})"


def _fmt_q(c: mpq) -> str:
    return str(int(c.numerator)) if c.denominator == 1 else f"{int(c.numerator)}/{int(c.denominator)}"


def parse_element(text: str) -> HopfElement:
    terms: dict[Forest, mpq] = {}
    rest = text.strip()
    if rest == "0":
        return HopfElement()
    # split on top-level '+'/'-' signs (brackets never contain them)
    tokens = re.findall(r"[+-]?[^+-]+", rest.replace(" - ", " -").replace(" + ", " +"))
    if not tokens:
        raise ValueError(f"cannot parse Hopf element {text!r}")
    for tok in tokens:
        tok = tok.strip()
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-").strip()
        m = re.match(r"^(\d+(?:/\d+)?)?\s*(.*)$", tok)
        coef, body = m.group(1), m.group(2).strip()
        if coef is not None and not body:
            f = UNIT
        else:
            f = parse_forest(body)
        c = Q(coef) if coef else mpq(1)
        terms[f] = terms.get(f, 0) + sign * c
    return HopfElement(terms)


def as_element(x) -> HopfElement:
    if isinstance(x, HopfElement):
        return x
    if isinstance(x, (Tree, Forest)):
        return HopfElement.of(x)
    if isinstance(x, (int, mpq)) or hasattr(x, "denominator"):
        return HopfElement({UNIT: x})
    raise TypeError(f"not a Hopf algebra element: {x!r}")


def product(a, b) -> HopfElement:
    """Bilinear extension of forest concatenation."""
    a, b = as_element(a), as_element(b)
    out: dict[Forest, mpq] = {}
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            f = fa * fb
            out[f] = out.get(f, 0) + ca * cb
    return HopfElement(out)


class TensorElement:
    """Element of H (x) H stored flat as ``(Forest, Forest) -> coefficient``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Forest, Forest], object] | None = None):
        self.terms: dict[tuple[Forest, Forest], mpq] = {}
        if terms:
            for k, c in terms.items():
                c = Q(c)
                if c != 0:
                    self.terms[k] = c

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, object, object]]) -> TensorElement:
        """From ``(coefficient, left, right)`` with trees/forests/``1``."""
        out: dict[tuple[Forest, Forest], mpq] = {}
        for c, a, b in pairs:
            k = (_to_forest(a), _to_forest(b))
            out[k] = out.get(k, 0) + Q(c)
        return cls(out)

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(out)

    def __neg__(self) -> TensorElement:
        return TensorElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __mul__(self, other: TensorElement) -> TensorElement:
        """Product in the tensor-square algebra."""
        out: dict[tuple[Forest, Forest], mpq] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 * a2, b1 * b2)
                out[k] = out.get(k, 0) + c1 * c2
        return TensorElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda it: it[0])

    def map_left(self, fn: Callable[[Forest], HopfElement]) -> HopfElement:
        """``m o (fn (x) Id)``."""
        out = HopfElement()
        for (a, b), c in self.terms.items():
            out = out + product(fn(a), b) * c
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.items():
            body = f"{a} (x) {b}"
            parts.append((c, body if abs(c) == 1 else f"{_fmt_q(abs(c))} {body}"))
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for c, body in parts[1:]:
            out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"TensorElement({self})"


def _to_forest(x) -> Forest:
    if isinstance(x, Forest):
        return x
    if isinstance(x, Tree):
        return Forest((x,))
    if x == 1:
        return UNIT
    raise TypeError(f"expected tree, forest or 1, got {x!r}")


class TripleTensor:
    """Element of H (x) H (x) H, keyed by forest triples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Forest, Forest, Forest], mpq]):
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, TripleTensor) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]


@lru_cache(maxsize=None)
def _tree_coproduct(t: Tree) -> TensorElement:
    pairs = [(1, t, 1), (1, 1, t)]
    pairs += [(1, c.pruned, c.cotree) for c in admissible_cuts(t)]
    return TensorElement.from_pairs(pairs)


@lru_cache(maxsize=None)
def forest_coproduct(f: Forest) -> TensorElement:
    out = TensorElement({(UNIT, UNIT): 1})
    for t in f.trees:
        out = out * _tree_coproduct(t)
    return out


def coproduct(x) -> TensorElement:
    x = as_element(x)
    out: dict[tuple[Forest, Forest], mpq] = {}
    for f, c in x.terms.items():
        for k, v in forest_coproduct(f).terms.items():
            out[k] = out.get(k, 0) + c * v
    return TensorElement(out)


def reduced_coproduct(x) -> TensorElement:
    """``Delta(x) - x (x) 1 - 1 (x) x``."""
    x = as_element(x)
    d = coproduct(x)
    out = dict(d.terms)
    for f, c in x.terms.items():
        for k in ((f, UNIT), (UNIT, f)):
            out[k] = out.get(k, 0) - c
    return TensorElement(out)


def counit(x) -> mpq:
    return as_element(x).terms.get(UNIT, mpq(0))


def _linear(fn: Callable[[Forest], HopfElement]) -> Callable[[object], HopfElement]:
    def apply(x) -> HopfElement:
        x = as_element(x)
        out = HopfElement()
        for f, c in x.terms.items():
            out = out + fn(f) * c
        return out

    return apply


@lru_cache(maxsize=None)
def _antipode_tree(t: Tree) -> HopfElement:
    # S(t) = -t - sum_c S(P_c(t)) R_c(t)
    out = -HopfElement.of(t)
    for cut in admissible_cuts(t):
        out = out - product(_antipode_forest(cut.pruned), cut.cotree)
    return out


@lru_cache(maxsize=None)
def _antipode_forest(f: Forest) -> HopfElement:
    out = HopfElement.unit()
    for t in f.trees:
        out = product(out, _antipode_tree(t))
    return out


antipode = _linear(_antipode_forest)
antipode.__doc__ = "Antipode via S(t) = -t - sum S(P_c(t)) R_c(t), multiplicative on forests."


@lru_cache(maxsize=None)
def _antipode_right_forest(f: Forest) -> HopfElement:
    # S(x) = -x - sum x' S(x'') over the reduced coproduct, applied to the whole forest
    if f.is_unit():
        return HopfElement.unit()
    out = -HopfElement.of(f)
    for (a, b), c in reduced_coproduct(f).terms.items():
        out = out - product(a, _antipode_right_forest(b)) * c
    return out


antipode_right = _linear(_antipode_right_forest)
antipode_right.__doc__ = "Antipode via S(x) = -x - sum x' S(x''), no multiplicativity assumed."


def antipode_geometric(x) -> HopfElement:
    """``S = sum_n (eta eps - Id)^{*n}``; terminates at n = deg(x)."""
    x = as_element(x)
    total = HopfElement()
    for f, c in x.terms.items():
        total = total + _geometric_forest(f) * c
    return total


@lru_cache(maxsize=None)
def _power_forest(n: int, f: Forest) -> HopfElement:
    """``(eta eps - Id)^{*n}(f)`` in End(H) with convolution m o (. (x) .) o Delta."""
    if n == 0:
        return HopfElement.unit() if f.is_unit() else HopfElement()
    out = HopfElement()
    for (a, b), c in forest_coproduct(f).terms.items():
        left = _power_forest(n - 1, a)
        if left.is_zero():
            continue
        # (eta eps - Id)(b) = -b for b of positive degree, 0 on the unit
        if b.is_unit():
            continue
        out = out + product(left, b) * (-c)
    return out


def _geometric_forest(f: Forest) -> HopfElement:
    total = HopfElement()
    for n in range(f.degree + 1):
        total = total + _power_forest(n, f)
    return total


def apply_grading(x) -> HopfElement:
    """``Y``: scale each forest by its degree."""
    x = as_element(x)
    return HopfElement({f: c * f.degree for f, c in x.terms.items()})


def coassociativity_sides(x) -> tuple[TripleTensor, TripleTensor]:
    """``((Delta (x) Id) Delta x, (Id (x) Delta) Delta x)``."""
    d = coproduct(x)
    left: dict = {}
    right: dict = {}
    for (a, b), c in d.terms.items():
        for (a1, a2), c1 in forest_coproduct(a).terms.items():
            k = (a1, a2, b)
            left[k] = left.get(k, 0) + c * c1
        for (b1, b2), c2 in forest_coproduct(b).terms.items():
            k = (a, b1, b2)
            right[k] = right.get(k, 0) + c * c2
    return TripleTensor(left), TripleTensor(right)


class ExpWeighted:
    """Forests weighted by a rational coefficient and a symbolic factor ``exp(w)``.

    ``terms`` maps ``(forest, w) -> c`` meaning ``c * exp(w) * forest``; this
    keeps ``theta_t`` exact for rational ``t``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Forest, mpq], mpq]):
        self.terms = {k: Q(v) for k, v in terms.items() if v != 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, ExpWeighted) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return " + ".join(f"{_fmt_q(c)} exp({_fmt_q(w)}) {f}" for (f, w), c in sorted(self.terms.items(),
                                                                                   key=lambda it: it[0][0]))


def theta(x, t, tau_cap: int | None = None):
    """``theta_t``: multiply a degree-n forest by ``exp(n t)``.

    * rational ``t`` -> :class:`ExpWeighted` (exact exponent bookkeeping); an
      :class:`ExpWeighted` input gets its exponents shifted, so
      ``theta(theta(x, s), t) == theta(x, s + t)``;
    * :class:`SymPoly` ``t`` with zero constant term -> ``{forest: SymPoly}``
      holding the exponential truncated at TAU-degree ``tau_cap``.
    """
    if isinstance(t, SymPoly):
        if t.constant() != 0:
            raise ValueError("formal argument must have zero constant term")
        if tau_cap is None:
            raise ValueError("formal theta needs a TAU-degree cap")
        if any(((k >> 32) & 0xFFFF) == 0 for k in t.terms):
            raise ValueError("formal argument must be nilpotent in TAU")
        x = as_element(x)
        out: dict[Forest, SymPoly] = {}
        for f, c in x.terms.items():
            arg = t.scale(f.degree)
            e = SymPoly.const(1)
            term = SymPoly.const(1)
            for k in range(1, tau_cap + 1):
                term = term.mul(arg, tau_cap).scale(mpq(1, k))
                e = e + term
            out[f] = out.get(f, SymPoly()) + e.scale(c)
        return out
    t = Q(t)
    if isinstance(x, ExpWeighted):
        return ExpWeighted({(f, w + t * f.degree): c for (f, w), c in x.terms.items()})
    x = as_element(x)
    return ExpWeighted({(f, t * f.degree): c for f, c in x.terms.items()})
