"""Truncated Laurent series in ``z`` over exact symbolic polynomials.

The coefficient ring is ``Q[PI2, L, TAU, U]`` where ``PI2`` stands for pi**2,
``L`` for log(a/mu), ``TAU`` for the flow parameter t and ``U`` for exp(-t).
The symbols satisfy no relations, so structural equality of canonical term
maps is semantic equality.

A :class:`LaurentSeries` carries a *window* ``(lo, hi)``: every coefficient
below ``lo`` is known to vanish and every coefficient up to ``hi`` is exact.
Coefficients above ``hi`` are unknown.  ``hi`` may be ``math.inf`` for exact
(finite) expansions.  A second precision, ``tau_prec``, bounds the TAU-degree
up to which coefficients are exact; it is finite only for values derived from
TAU-truncated exponentials.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from gmpy2 import mpq

__all__ = [
    "SymPoly",
    "LaurentSeries",
    "PrecisionError",
    "SeriesError",
    "PI2",
    "L",
    "TAU",
    "U",
    "Q",
    "bn_series",
    "sin_series",
    "minimal_subtraction",
    "holomorphic_part",
    "residue",
    "eval_at_zero",
    "limit_u_to_zero",
]

INF = math.inf

# Exponents are packed into one int, 16 bits per symbol, so monomial
# multiplication is integer addition.
_BITS = 16
_MASK = (1 << _BITS) - 1
SYMBOLS = ("pi2", "L", "tau", "u")
_SHIFT = {name: i * _BITS for i, name in enumerate(SYMBOLS)}
_TAU_SHIFT = _SHIFT["tau"]
_U_SHIFT = _SHIFT["u"]


class SeriesError(ArithmeticError):
    """Raised for algebraically impossible series operations."""


class PrecisionError(SeriesError):
    """Raised when a result would need coefficients outside the known window."""


def Q(x) -> mpq:
    """Coerce ints, Fractions, strings and mpq values to ``mpq``."""
    if isinstance(x, str):
        return mpq(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (i * _BITS)
    return key


def _unpack(key: int) -> tuple[int, int, int, int]:
    return tuple((key >> (i * _BITS)) & _MASK for i in range(4))  # type: ignore[return-value]


def _tau_deg(key: int) -> int:
    return (key >> _TAU_SHIFT) & _MASK


class SymPoly:
    """Sparse polynomial in PI2, L, TAU, U with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, mpq] | None = None, *, _clean: bool = False):
        if terms is None:
            self.terms: dict[int, mpq] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            self.terms = {k: Q(v) for k, v in terms.items() if v != 0}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> SymPoly:
        c = Q(c)
        return cls({0: c}, _clean=True) if c != 0 else cls()

    @classmethod
    def monomial(cls, c=1, *, pi2: int = 0, L: int = 0, tau: int = 0, u: int = 0) -> SymPoly:
        c = Q(c)
        if c == 0:
            return cls()
        return cls({_pack((pi2, L, tau, u)): c}, _clean=True)

    @classmethod
    def from_exponents(cls, items: Iterable[tuple[tuple[int, int, int, int], object]]) -> SymPoly:
        out: dict[int, mpq] = {}
        for exps, c in items:
            k = _pack(exps)
            v = out.get(k, 0) + Q(c)
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return cls(out, _clean=True)

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def constant(self) -> mpq:
        return self.terms.get(0, mpq(0))

    def degree(self, symbol: str) -> int:
        """Highest exponent of ``symbol``; -1 for the zero polynomial."""
        s = _SHIFT[symbol]
        return max(((k >> s) & _MASK for k in self.terms), default=-1)

    def min_degree(self, symbol: str) -> int:
        s = _SHIFT[symbol]
        return min(((k >> s) & _MASK for k in self.terms), default=-1)

    def items(self):
        """Yield ``((pi2, L, tau, u), coefficient)`` in canonical order."""
        for k in sorted(self.terms):
            yield _unpack(k), self.terms[k]

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> SymPoly:
        if not isinstance(other, SymPoly):
            other = SymPoly.const(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s == 0:
                    del out[k]
                else:
                    out[k] = s
        return SymPoly(out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> SymPoly:
        return SymPoly({k: -v for k, v in self.terms.items()}, _clean=True)

    def __sub__(self, other) -> SymPoly:
        if not isinstance(other, SymPoly):
            other = SymPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> SymPoly:
        return (-self) + other

    def scale(self, c) -> SymPoly:
        c = Q(c)
        if c == 0:
            return SymPoly()
        if c == 1:
            return self
        return SymPoly({k: v * c for k, v in self.terms.items()}, _clean=True)

    def mul(self, other: SymPoly, tau_max=INF) -> SymPoly:
        """Product, dropping monomials of TAU-degree above ``tau_max``."""
        if not self.terms or not other.terms:
            return SymPoly()
        out: dict[int, mpq] = {}
        get = out.get
        bounded = tau_max != INF
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                if bounded and _tau_deg(k) > tau_max:
                    continue
                out[k] = get(k, 0) + v1 * v2
        return SymPoly({k: v for k, v in out.items() if v != 0}, _clean=True)

    def __mul__(self, other) -> SymPoly:
        if isinstance(other, SymPoly):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def truncate_tau(self, tau_max) -> SymPoly:
        if tau_max == INF:
            return self
        return SymPoly({k: v for k, v in self.terms.items() if _tau_deg(k) <= tau_max}, _clean=True)

    def diff_tau(self) -> SymPoly:
        out = {}
        step = 1 << _TAU_SHIFT
        for k, v in self.terms.items():
            d = _tau_deg(k)
            if d:
                out[k - step] = v * d
        return SymPoly(out, _clean=True)

    def subs_tau(self, value) -> SymPoly:
        """Substitute a rational number for TAU."""
        value = Q(value)
        out: dict[int, mpq] = {}
        for k, v in self.terms.items():
            d = _tau_deg(k)
            nk = k - (d << _TAU_SHIFT)
            out[nk] = out.get(nk, 0) + v * value**d
        return SymPoly({k: v for k, v in out.items() if v != 0}, _clean=True)

    def u_zero(self) -> SymPoly:
        """Set U = 0."""
        return SymPoly({k: v for k, v in self.terms.items() if not (k >> _U_SHIFT) & _MASK}, _clean=True)

    # comparison / display ----------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            return self.terms == other.terms
        try:
            return self.terms == SymPoly.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def equal_mod_tau(self, other: SymPoly, tau_max) -> bool:
        return self.truncate_tau(tau_max).terms == other.truncate_tau(tau_max).terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> list[dict]:
        return [
            {"pi2": e[0], "L": e[1], "tau": e[2], "u": e[3], "num": str(c.numerator), "den": str(c.denominator)}
            for e, c in self.items()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> SymPoly:
        return cls.from_exponents(
            ((d["pi2"], d["L"], d["tau"], d["u"]), mpq(int(d["num"]), int(d["den"]))) for d in data
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        # higher total degree first, reads closer to hand-written formulas
        for exps, c in sorted(self.items(), key=lambda it: (-sum(it[0]), it[0])):
            parts.append(_format_term(exps, c))
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __repr__(self) -> str:
        return f"SymPoly({self})"

    def is_single_term(self) -> bool:
        return len(self.terms) == 1


def _format_term(exps, c) -> str:
    names = []
    pi2, l, tau, u = exps
    if pi2:
        names.append("pi^%d" % (2 * pi2))
    for sym, e in (("L", l), ("t", tau), ("U", u)):
        if e == 1:
            names.append(sym)
        elif e:
            names.append(f"{sym}^{e}")
    mono = " ".join(names)
    num, den = int(c.numerator), int(c.denominator)
    sign = "-" if num < 0 else ""
    num = abs(num)
    if not mono:
        body = str(num) if den == 1 else f"{num}/{den}"
    else:
        body = mono if num == 1 else f"{num} {mono}"
        if den != 1:
            body += f"/{den}"
    return sign + body


PI2 = SymPoly.monomial(pi2=1)
L = SymPoly.monomial(L=1)
TAU = SymPoly.monomial(tau=1)
U = SymPoly.monomial(u=1)
_ONE = SymPoly.const(1)


def _as_poly(c) -> SymPoly:
    return c if isinstance(c, SymPoly) else SymPoly.const(c)


class LaurentSeries:
    """Windowed truncated Laurent series in ``z`` with :class:`SymPoly` coefficients.

    Immutable.  Arithmetic propagates windows so that every stored coefficient
    is exact; operations that would need unknown coefficients raise
    :class:`PrecisionError` instead of returning silently wrong zeros.
    """

    __slots__ = ("coeffs", "lo", "hi", "tau_prec")

    def __init__(self, coeffs: Mapping[int, SymPoly] | None = None, lo=None, hi=INF, tau_prec=INF):
        cs = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _as_poly(v).truncate_tau(tau_prec)
                if v.terms and k <= hi:
                    cs[k] = v
        if lo is None:
            lo = min(cs, default=INF)
        if cs:
            m = min(cs)
            if m < lo:
                raise ValueError(f"coefficient at z^{m} below window lo={lo}")
            # the valuation is known exactly once a nonzero coefficient is stored
            lo = m
        elif hi == INF:
            lo = INF
        if lo != INF and hi != INF and hi < lo - 1:
            raise PrecisionError(f"empty window [{lo}, {hi}]")
        self.coeffs: dict[int, SymPoly] = cs
        self.lo = lo
        self.hi = hi
        self.tau_prec = tau_prec

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls) -> LaurentSeries:
        return cls()

    @classmethod
    def one(cls) -> LaurentSeries:
        return cls({0: _ONE})

    @classmethod
    def const(cls, c) -> LaurentSeries:
        return cls({0: _as_poly(c)})

    @classmethod
    def monomial(cls, c=1, k: int = 0) -> LaurentSeries:
        """Exact ``c * z**k``."""
        return cls({k: _as_poly(c)})

    @classmethod
    def from_rationals(cls, coeffs: Mapping[int, object], lo=None, hi=INF) -> LaurentSeries:
        return cls({k: SymPoly.const(v) for k, v in coeffs.items()}, lo=lo, hi=hi)

    # queries ------------------------------------------------------------
    @property
    def window(self) -> tuple:
        return (self.lo, self.hi)

    def coeff(self, k: int) -> SymPoly:
        """Coefficient of ``z**k``; raises if it is outside the known window."""
        if k > self.hi:
            raise PrecisionError(f"coefficient of z^{k} requested but window ends at {self.hi}")
        return self.coeffs.get(k, SymPoly())

    def is_exact(self) -> bool:
        return self.hi == INF and self.tau_prec == INF

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def valuation(self):
        return min(self.coeffs, default=INF)

    def degree(self, symbol: str) -> int:
        return max((c.degree(symbol) for c in self.coeffs.values()), default=-1)

    def z_exponents(self) -> list[int]:
        return sorted(self.coeffs)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.const(other)
        if not other.coeffs and other.is_exact():
            return self
        if not self.coeffs and self.is_exact():
            return other
        hi = min(self.hi, other.hi)
        tp = min(self.tau_prec, other.tau_prec)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LaurentSeries(out, lo=min(self.lo, other.lo), hi=hi, tau_prec=tp)

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries({k: -v for k, v in self.coeffs.items()}, lo=self.lo, hi=self.hi, tau_prec=self.tau_prec)

    def __sub__(self, other) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.const(other)
        return self + (-other)

    def __rsub__(self, other) -> LaurentSeries:
        return (-self) + other

    def scale(self, c) -> LaurentSeries:
        """Multiply by a rational number or a :class:`SymPoly` constant."""
        if isinstance(c, SymPoly):
            return self * LaurentSeries.const(c)
        c = Q(c)
        if c == 0:
            if self.is_exact():
                return LaurentSeries()
            return LaurentSeries(lo=self.lo, hi=self.hi, tau_prec=self.tau_prec)
        if c == 1:
            return self
        return LaurentSeries({k: v.scale(c) for k, v in self.coeffs.items()}, lo=self.lo, hi=self.hi,
                             tau_prec=self.tau_prec)

    def __mul__(self, other) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        a, b = self, other
        tp = min(a.tau_prec, b.tau_prec)
        if (not a.coeffs and a.is_exact()) or (not b.coeffs and b.is_exact()):
            return LaurentSeries()
        lo = a.lo + b.lo
        hi = min(a.lo + b.hi, b.lo + a.hi)
        out: dict[int, SymPoly] = {}
        for i, ca in a.coeffs.items():
            for j, cb in b.coeffs.items():
                k = i + j
                if k > hi:
                    continue
                p = ca.mul(cb, tp)
                if p.terms:
                    out[k] = out[k] + p if k in out else p
        return LaurentSeries(out, lo=lo, hi=hi, tau_prec=tp)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by ``z**k``."""
        return LaurentSeries({e + k: v for e, v in self.coeffs.items()}, lo=self.lo + k, hi=self.hi + k,
                             tau_prec=self.tau_prec)

    def truncate(self, hi) -> LaurentSeries:
        """Forget coefficients above ``hi``."""
        if hi >= self.hi:
            return self
        return LaurentSeries(self.coeffs, lo=self.lo, hi=hi, tau_prec=self.tau_prec)

    def map_coeffs(self, fn, tau_prec=None) -> LaurentSeries:
        tp = self.tau_prec if tau_prec is None else tau_prec
        return LaurentSeries({k: fn(v) for k, v in self.coeffs.items()}, lo=self.lo, hi=self.hi, tau_prec=tp)

    def diff_tau(self) -> LaurentSeries:
        """Derivative with respect to TAU; exact one TAU-degree lower."""
        return self.map_coeffs(SymPoly.diff_tau, tau_prec=self.tau_prec - 1)

    def subs_tau(self, value) -> LaurentSeries:
        """Substitute a rational for TAU; only ``0`` is exact under TAU truncation."""
        if self.tau_prec != INF and Q(value) != 0:
            raise PrecisionError("cannot substitute TAU into a TAU-truncated series")
        return LaurentSeries({k: c.subs_tau(value) for k, c in self.coeffs.items()}, lo=self.lo, hi=self.hi)

    def pow(self, n: int) -> LaurentSeries:
        out = LaurentSeries.one()
        for _ in range(n):
            out = out * self
        return out

    def invert(self) -> LaurentSeries:
        return series_invert(self)

    def exp(self, hi=None) -> LaurentSeries:
        return series_exp(self, hi)

    # comparison ---------------------------------------------------------
    def common_hi(self, other: LaurentSeries):
        return min(self.hi, other.hi)

    def agrees(self, other, *, upto=None) -> bool:
        """Equality on the common window (and common TAU precision).

        ``upto`` additionally demands that the common window reaches at least
        that exponent, so comparisons cannot pass vacuously.
        """
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.const(other)
        hi = min(self.hi, other.hi)
        if upto is not None and hi < upto:
            raise PrecisionError(f"common window ends at z^{hi}, comparison needs z^{upto}")
        tp = min(self.tau_prec, other.tau_prec)
        keys = {k for k in self.coeffs if k <= hi} | {k for k in other.coeffs if k <= hi}
        zero = SymPoly()
        for k in keys:
            if not self.coeffs.get(k, zero).equal_mod_tau(other.coeffs.get(k, zero), tp):
                return False
        return True

    def __eq__(self, other) -> bool:
        if isinstance(other, (LaurentSeries, SymPoly, int)) or hasattr(other, "denominator"):
            return self.agrees(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        d = {
            "window": [_json_bound(self.lo), _json_bound(self.hi)],
            "coeffs": {str(k): self.coeffs[k].to_json() for k in sorted(self.coeffs)},
        }
        if self.tau_prec != INF:
            d["tau_prec"] = self.tau_prec
        return d

    @classmethod
    def from_json(cls, data: dict) -> LaurentSeries:
        lo, hi = data["window"]
        return cls(
            {int(k): SymPoly.from_json(v) for k, v in data["coeffs"].items()},
            lo=INF if lo is None else lo,
            hi=INF if hi is None else hi,
            tau_prec=data.get("tau_prec", INF),
        )

    def __str__(self) -> str:
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            zs = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            cs = str(c)
            if not zs:
                parts.append(cs)
            elif c.is_single_term():
                if cs == "1":
                    parts.append(zs)
                elif cs == "-1":
                    parts.append("-" + zs)
                else:
                    parts.append(f"{cs} {zs}")
            else:
                parts.append(f"({cs}) {zs}")
        s = parts[0] if parts else "0"
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        if self.hi != INF:
            s += f" + O(z^{self.hi + 1})"
        if self.tau_prec != INF:
            s += f" + O(t^{self.tau_prec + 1})"
        return s

    def __repr__(self) -> str:
        return f"LaurentSeries({self}, window={self.window})"


def _json_bound(x):
    return None if x == INF else int(x)


# ---------------------------------------------------------------------------
# free functions

def series_invert(a: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse; the leading coefficient must be a nonzero rational."""
    if not a.coeffs:
        raise SeriesError("cannot invert a series with no known nonzero coefficient")
    v = a.valuation()
    lead = a.coeffs[v]
    if not lead.is_constant():
        raise SeriesError(f"leading coefficient {lead} is not an invertible constant")
    inv_lead = 1 / lead.constant()
    # a = z^v * lead * (1 + r), 1/(1+r) by the standard recurrence
    rel_hi = a.hi - v  # relative precision
    if rel_hi == INF:
        if len(a.coeffs) > 1:
            raise SeriesError("inverse of an exact non-monomial series is infinite; truncate first")
        return LaurentSeries({-v: SymPoly.const(inv_lead)}, tau_prec=a.tau_prec)
    rel = {k - v: c.scale(inv_lead) for k, c in a.coeffs.items()}
    tp = a.tau_prec
    b: dict[int, SymPoly] = {0: _ONE}
    for n in range(1, int(rel_hi) + 1):
        acc = SymPoly()
        for k in range(1, n + 1):
            rk = rel.get(k)
            bk = b.get(n - k)
            if rk is not None and bk is not None:
                acc = acc + rk.mul(bk, tp)
        if acc.terms:
            b[n] = -acc
    out = {k - v: c.scale(inv_lead) for k, c in b.items()}
    return LaurentSeries(out, lo=-v, hi=-v + rel_hi, tau_prec=tp)


def _tau_nilpotent(c: SymPoly) -> bool:
    return all(_tau_deg(k) > 0 for k in c.terms)


def series_exp(a: LaurentSeries, hi=None) -> LaurentSeries:
    """``sum a**k / k!``.

    Allowed when ``a`` has positive ``z``-valuation (truncated at ``hi`` or
    ``a.hi``), or when its ``z**0`` coefficient is nilpotent in TAU under a
    finite TAU precision.  Any pole in ``a`` makes the sum non-terminating.
    """
    if not a.coeffs:
        return LaurentSeries({0: _ONE}, hi=a.hi if hi is None else min(a.hi, hi), tau_prec=a.tau_prec)
    if a.valuation() < 0:
        raise SeriesError("exp of a series with a pole does not terminate")
    tau_only = all(_tau_nilpotent(c) for c in a.coeffs.values()) and a.tau_prec != INF
    c0 = a.coeffs.get(0)
    if c0 is not None and not (_tau_nilpotent(c0) and a.tau_prec != INF):
        raise SeriesError(f"exp needs a nilpotent constant term, got {c0}")
    target = a.hi
    if not tau_only:
        if target == INF and hi is None:
            raise SeriesError("exp of an exact series needs a truncation order")
        if hi is not None:
            target = min(target, hi)
    # truncating a to the target window first keeps intermediate products small
    if target != INF:
        a = a.truncate(target)
    result = LaurentSeries.one()
    term = LaurentSeries.one()
    k = 0
    limit = (0 if target == INF else int(target)) + (0 if a.tau_prec == INF else int(a.tau_prec)) + 2
    while True:
        k += 1
        term = (term * a).scale(mpq(1, k))
        if target != INF:
            term = term.truncate(target)
        if not term.coeffs:
            break
        result = result + term
        if k > limit:
            raise SeriesError("exp did not terminate")
    if target != INF:
        result = result.truncate(target)
        if result.hi > target:
            result = LaurentSeries(result.coeffs, lo=result.lo, hi=target, tau_prec=result.tau_prec)
    return result


def minimal_subtraction(a: LaurentSeries) -> LaurentSeries:
    """Pole part: keep exponents < 0.  The result is exact."""
    if a.hi < -1:
        raise PrecisionError(f"pole part needs coefficients up to z^-1, window ends at z^{a.hi}")
    return LaurentSeries({k: v for k, v in a.coeffs.items() if k < 0}, tau_prec=a.tau_prec)


def holomorphic_part(a: LaurentSeries) -> LaurentSeries:
    """``(1 - pi)(a)``: keep exponents >= 0."""
    if a.hi < -1:
        raise PrecisionError(f"holomorphic part undefined: window ends at z^{a.hi}")
    return LaurentSeries({k: v for k, v in a.coeffs.items() if k >= 0}, lo=0, hi=a.hi, tau_prec=a.tau_prec)


def residue(a: LaurentSeries) -> SymPoly:
    """Coefficient of ``z**-1``."""
    if a.hi < -1:
        raise PrecisionError(f"residue needs z^-1, window ends at z^{a.hi}")
    return a.coeffs.get(-1, SymPoly())


def eval_at_zero(a: LaurentSeries) -> SymPoly:
    """Constant term of a series holomorphic at ``z = 0``."""
    if a.hi < 0:
        raise PrecisionError(f"value at z=0 needs z^0, window ends at z^{a.hi}")
    poles = [k for k in a.coeffs if k < 0]
    if poles:
        raise SeriesError(f"not holomorphic at 0: pole of order {-min(poles)}")
    return a.coeffs.get(0, SymPoly())


def limit_u_to_zero(a: LaurentSeries) -> LaurentSeries:
    """Set ``U = exp(-t)`` to zero, i.e. the ``t -> +inf`` limit."""
    return a.map_coeffs(SymPoly.u_zero)


def sin_series(n: int, hi) -> LaurentSeries:
    """``sin(pi n z) / pi`` up to ``z**hi``."""
    out = {}
    k = 0
    fact = 1
    while 2 * k + 1 <= hi:
        if k:
            fact *= (2 * k) * (2 * k + 1)
        out[2 * k + 1] = SymPoly.monomial(mpq((-1) ** k * n ** (2 * k + 1), fact), pi2=k)
        k += 1
    return LaurentSeries(out, lo=1, hi=hi)


_BN_CACHE: dict[tuple[int, int], LaurentSeries] = {}


def bn_series(n: int, hi) -> LaurentSeries:
    """``B(nz, 1 - nz) = pi / sin(pi n z)`` up to ``z**hi``.

    Built by inverting the sine series; only odd exponents >= -1 occur.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    key = (n, int(hi))
    s = _BN_CACHE.get(key)
    if s is None:
        # relative precision of the inverse equals that of the sine series
        s = series_invert(sin_series(n, hi + 2))
        s = s.truncate(hi)
        _BN_CACHE[key] = s
    return s
