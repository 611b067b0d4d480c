"""Lower-triangular matrix representation over a left coideal.

A left coideal ``J`` spanned by trees closed under taking cotrees gives the
coproduct matrix ``M`` with ``Delta(x_i) = sum_j M_ij (x) x_j``; a linear map
``f`` is represented by ``Psi[f]_ij = f(M_ij)``.  Index 0 is always the unit
forest.  The module implements matrix Birkhoff decomposition (Atkinson
recursions and the explicit chain sums), the grading matrix ``Z0``, the three
forms of the matrix beta function, the flow identities and the scattering
formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .characters import (
    CHARACTER,
    INFINITESIMAL,
    LinearMap,
    beta_scalar,
    convolve,
    flow_factor,
    star_inverse,
)
from .coeff_series import (
    LaurentSeries,
    SeriesError,
    SymPoly,
    TAU,
    holomorphic_part,
    limit_u_to_zero,
    minimal_subtraction,
    residue,
)
from .config import DEFAULT, Config
from .forests import UNIT, Forest, Tree, admissible_cuts
from .hopf import HopfElement, TensorElement, _tree_coproduct, antipode, coproduct, product

__all__ = [
    "CoidealBasis",
    "NotACoidealError",
    "coideal_closure",
    "HopfMatrix",
    "coproduct_matrix",
    "TriMatrix",
    "psi",
    "AtkinsonResult",
    "atkinson_factorize",
    "atkinson_identity",
    "nonrecursive_entries",
    "chain_sum_left",
    "chain_sum_right",
    "z0_matrix",
    "exp_z0",
    "scale_conjugate",
    "beta_matrix",
    "beta_matrix_commutator",
    "beta_matrix_bch",
    "bch_generator",
    "nested_commutator_sum",
    "FlowReport",
    "aplus_flow_check",
    "scattering_limit",
    "scattering_spectral",
    "scattering_psi",
    "MatrixConsistencyError",
    "matrix_coassociativity",
    "inverse_chain_plus",
    "beta_psi",
    "scattering_product",
    "antipode_matrix",
]


class NotACoidealError(ValueError):
    pass


class MatrixConsistencyError(AssertionError):
    pass


# --- coideal bases -----------------------------------------------------------

class CoidealBasis:
    """Filtration-ordered tree basis of a left coideal; index 0 is ``1``."""

    __slots__ = ("trees", "forests", "degrees", "_index")

    def __init__(self, trees: Sequence[Tree]):
        trees = tuple(trees)
        if len(set(trees)) != len(trees):
            raise ValueError("duplicate trees in basis")
        self.trees = trees
        self.forests: tuple[Forest, ...] = (UNIT,) + tuple(Forest((t,)) for t in trees)
        self.degrees: tuple[int, ...] = tuple(f.degree for f in self.forests)
        if any(a > b for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError("basis is not filtration-ordered")
        self._index = {f: i for i, f in enumerate(self.forests)}
        for t in trees:
            for cut in admissible_cuts(t):
                if Forest((cut.cotree,)) not in self._index:
                    raise NotACoidealError(f"not a coideal: cotree {cut.cotree} of {t} is missing")

    def __len__(self) -> int:
        return len(self.forests)

    def index(self, f: Forest) -> int:
        return self._index[f]

    def labels(self) -> list[str]:
        return [str(f) for f in self.forests]

    def __repr__(self) -> str:
        return "CoidealBasis(" + ", ".join(self.labels()) + ")"


def coideal_closure(seeds: Iterable[Tree]) -> CoidealBasis:
    """Smallest cotree-closed set containing ``seeds``, sorted canonically."""
    seen: set[Tree] = set()
    todo = list(seeds)
    while todo:
        t = todo.pop()
        if t in seen:
            continue
        seen.add(t)
        todo.extend(c.cotree for c in admissible_cuts(t))
    return CoidealBasis(sorted(seen))


# --- H-valued matrices -------------------------------------------------------

class HopfMatrix:
    """Square lower-triangular matrix with :class:`HopfElement` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[HopfElement]]):
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> HopfElement:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: HopfMatrix) -> HopfMatrix:
        n = self.n
        out = [[HopfElement() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                acc = HopfElement()
                for k in range(j, i + 1):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.terms and b.terms:
                        acc = acc + product(a, b)
                out[i][j] = acc
        return HopfMatrix(out)

    def __sub__(self, other: HopfMatrix) -> HopfMatrix:
        return HopfMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __add__(self, other: HopfMatrix) -> HopfMatrix:
        return HopfMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __eq__(self, other) -> bool:
        return isinstance(other, HopfMatrix) and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def identity(cls, n: int) -> HopfMatrix:
        return cls([[HopfElement.unit() if i == j else HopfElement() for j in range(n)] for i in range(n)])

    def map(self, fn: Callable[[HopfElement], HopfElement]) -> HopfMatrix:
        return HopfMatrix([[fn(a) for a in r] for r in self.rows])

    def inverse_unipotent(self) -> HopfMatrix:
        """``1 + sum_k (-1)^k (M - 1)^k``."""
        one = HopfMatrix.identity(self.n)
        nil = self - one
        out, term = one, one
        for k in range(1, self.n):
            term = term * nil
            out = out + term if k % 2 == 0 else out - term
        return out

    def log_unipotent(self) -> HopfMatrix:
        """Normal coordinates ``sum_k (-1)^{k+1} (M - 1)^k / k``."""
        nil = self - HopfMatrix.identity(self.n)
        out = HopfMatrix([[HopfElement()] * self.n for _ in range(self.n)])
        term = HopfMatrix.identity(self.n)
        for k in range(1, self.n):
            term = term * nil
            scaled = term.map(lambda a, k=k: a * mpq((-1) ** (k + 1), k))
            out = out + scaled
        return out

    def text(self) -> str:
        width = [max(len(str(self.rows[i][j])) for i in range(self.n)) for j in range(self.n)]
        return "\n".join("  ".join(str(a).ljust(w) for a, w in zip(r, width)).rstrip() for r in self.rows)

    def to_json(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.rows]


def coproduct_matrix(basis: CoidealBasis) -> HopfMatrix:
    """The unique ``M`` with ``Delta(x_i) = sum_j M_ij (x) x_j``."""
    n = len(basis)
    rows = [[HopfElement() for _ in range(n)] for _ in range(n)]
    rows[0][0] = HopfElement.unit()
    for i, t in enumerate(basis.trees, start=1):
        for (left, right), c in _tree_coproduct(t).terms.items():
            try:
                j = basis.index(right)
            except KeyError:
                raise NotACoidealError(f"not a coideal: {right} appears in the coproduct of {t}") from None
            rows[i][j] = rows[i][j] + HopfElement({left: c})
    return HopfMatrix(rows)


def matrix_coassociativity(m: HopfMatrix) -> bool:
    """``Delta(M_ij) = sum_k M_ik (x) M_kj`` for every entry."""
    for i in range(m.n):
        for j in range(i + 1):
            rhs = TensorElement()
            for k in range(j, i + 1):
                a, b = m[i, k], m[k, j]
                rhs = rhs + TensorElement({(fa, fb): ca * cb for fa, ca in a.terms.items() for fb, cb in b.terms.items()})
            if coproduct(m[i, j]) != rhs:
                return False
    return True


# --- series-valued matrices ----------------------------------------------------

_ZERO = LaurentSeries.zero()
_ONE = LaurentSeries.one()


def _is_exact_zero(s: LaurentSeries) -> bool:
    return not s.coeffs and s.is_exact()


class TriMatrix:
    """Lower-triangular matrix of :class:`LaurentSeries`, immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[LaurentSeries]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("matrix must be square")
            for j in range(i + 1, n):
                if r[j].coeffs:
                    raise ValueError(f"entry ({i},{j}) above the diagonal is nonzero")
        self.rows = rows

    # construction -----------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> TriMatrix:
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> TriMatrix:
        return cls([[_ZERO] * n for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[LaurentSeries]) -> TriMatrix:
        n = len(values)
        return cls([[values[i] if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], LaurentSeries]) -> TriMatrix:
        return cls([[fn(i, j) if j <= i else _ZERO for j in range(n)] for i in range(n)])

    # access -----------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> LaurentSeries:
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i in range(self.n):
            for j in range(i + 1):
                yield i, j, self.rows[i][j]

    # arithmetic ---------------------------------------------------------------
    def map(self, fn: Callable[[LaurentSeries], LaurentSeries]) -> TriMatrix:
        return TriMatrix.from_function(self.n, lambda i, j: fn(self.rows[i][j]))

    def __add__(self, other: TriMatrix) -> TriMatrix:
        return TriMatrix.from_function(self.n, lambda i, j: self.rows[i][j] + other.rows[i][j])

    def __sub__(self, other: TriMatrix) -> TriMatrix:
        return TriMatrix.from_function(self.n, lambda i, j: self.rows[i][j] - other.rows[i][j])

    def __neg__(self) -> TriMatrix:
        return self.map(lambda s: -s)

    def scale(self, c) -> TriMatrix:
        if isinstance(c, LaurentSeries):
            return self.map(lambda s: c * s)
        return self.map(lambda s: s.scale(c))

    def shift(self, k: int) -> TriMatrix:
        """Multiply every entry by ``z**k``."""
        return self.map(lambda s: s.shift(k))

    def __mul__(self, other: TriMatrix) -> TriMatrix:
        a, b = self.rows, other.rows

        def entry(i: int, j: int) -> LaurentSeries:
            acc = _ZERO
            for k in range(j, i + 1):
                x, y = a[i][k], b[k][j]
                if _is_exact_zero(x) or _is_exact_zero(y):
                    continue
                acc = acc + x * y
            return acc

        return TriMatrix.from_function(self.n, entry)

    def commutator(self, other: TriMatrix) -> TriMatrix:
        return self * other - other * self

    def is_unipotent(self) -> bool:
        return all(self.rows[i][i].agrees(_ONE) and self.rows[i][i].coeffs.keys() <= {0} for i in range(self.n))

    def _nilpart(self) -> TriMatrix:
        if not self.is_unipotent():
            raise ValueError("matrix is not unipotent")
        return self - TriMatrix.identity(self.n)

    def inverse_unipotent(self) -> TriMatrix:
        """``1 + sum_k (-1)^k (A - 1)^k``, ending at ``k = n - 1``."""
        nil = self._nilpart()
        out = term = TriMatrix.identity(self.n)
        for k in range(1, self.n):
            term = term * nil
            out = out + term if k % 2 == 0 else out - term
        return out

    def log_unipotent(self) -> TriMatrix:
        nil = self._nilpart()
        out = TriMatrix.zeros(self.n)
        term = TriMatrix.identity(self.n)
        for k in range(1, self.n):
            term = term * nil
            out = out + term.scale(mpq((-1) ** (k + 1), k))
        return out

    def exp(self, max_terms: int | None = None) -> TriMatrix:
        """``sum X^k / k!``.

        Terminates when ``X`` is strictly lower-triangular (nilpotent) or
        when its entries are nilpotent in TAU under a finite TAU precision.
        """
        limit = max_terms if max_terms is not None else self.n + 64
        out = term = TriMatrix.identity(self.n)
        for k in range(1, limit + 1):
            term = (term * self).scale(mpq(1, k))
            if term.is_zero():
                return out
            out = out + term
        raise SeriesError("matrix exponential did not terminate; input is not nilpotent")

    def is_zero(self) -> bool:
        return all(not s.coeffs for _, _, s in self.entries())

    def rb(self) -> TriMatrix:
        """Entrywise minimal subtraction."""
        return self.map(minimal_subtraction)

    def rb_tilde(self) -> TriMatrix:
        return self.map(holomorphic_part)

    def residue(self) -> TriMatrix:
        return self.map(lambda s: LaurentSeries.const(residue(s)))

    def diff_tau(self) -> TriMatrix:
        return self.map(LaurentSeries.diff_tau)

    def u_to_zero(self) -> TriMatrix:
        return self.map(limit_u_to_zero)

    def constant_entries(self) -> bool:
        """Every entry is a ``z``-free, ``L``-free, TAU-free constant."""
        for _, _, s in self.entries():
            if any(k != 0 for k in s.coeffs):
                return False
            c = s.coeffs.get(0)
            if c is not None and (c.degree("L") > 0 or c.degree("tau") > 0):
                return False
        return True

    def agrees(self, other: TriMatrix, upto=None) -> bool:
        return self.n == other.n and all(s.agrees(other.rows[i][j], upto=upto) for i, j, s in self.entries())

    def __eq__(self, other) -> bool:
        return isinstance(other, TriMatrix) and self.agrees(other)

    __hash__ = None  # type: ignore[assignment]

    def first_mismatch(self, other: TriMatrix):
        for i, j, s in self.entries():
            if not s.agrees(other.rows[i][j]):
                return i, j
        return None

    # output -------------------------------------------------------------------
    def to_json(self) -> list[list[dict]]:
        return [[self.rows[i][j].to_json() for j in range(self.n)] for i in range(self.n)]

    def text(self, labels: Sequence[str] | None = None) -> str:
        lines = []
        for i, j, s in self.entries():
            if _is_exact_zero(s):
                continue
            tag = f"({i + 1},{j + 1})"
            if labels:
                tag += f" [{labels[i]} <- {labels[j]}]"
            lines.append(f"{tag}: {s}")
        return "\n".join(lines)


def psi(f: LinearMap, basis: CoidealBasis, m: HopfMatrix | None = None) -> TriMatrix:
    """``Psi[f]_ij = f(M_ij)``."""
    if m is None:
        m = coproduct_matrix(basis)
    return TriMatrix.from_function(len(basis), lambda i, j: f(m[i, j]) if m[i, j].terms else _ZERO)


# --- matrix Birkhoff decomposition ---------------------------------------------

@dataclass(frozen=True)
class AtkinsonResult:
    minus: TriMatrix
    plus: TriMatrix
    plus_inv: TriMatrix
    bogoliubov: TriMatrix
    plus_mm: TriMatrix
    plus_mmm: TriMatrix


def _solve_left(a: TriMatrix, proj: Callable[[LaurentSeries], LaurentSeries]) -> TriMatrix:
    """Unique ``X = 1 - P(X a)`` for strictly lower ``a`` (entries of row ``i``
    are filled from the diagonal leftwards)."""
    n = a.n
    x = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i - 1, -1, -1):
            acc = _ZERO
            for k in range(j + 1, i + 1):
                acc = acc + x[i][k] * a.rows[k][j]
            x[i][j] = -proj(acc)
    return TriMatrix(x)


def _solve_right(a: TriMatrix, proj: Callable[[LaurentSeries], LaurentSeries]) -> TriMatrix:
    """Unique ``Y = 1 - P(a Y)`` for strictly lower ``a`` (column-wise, top down)."""
    n = a.n
    y = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j + 1, n):
            acc = _ZERO
            for k in range(j, i):
                acc = acc + a.rows[i][k] * y[k][j]
            y[i][j] = -proj(acc)
    return TriMatrix(y)


def atkinson_factorize(phi_hat: TriMatrix) -> AtkinsonResult:
    """``phi_hat = minus^{-1} plus`` through the two Atkinson recursions.

    Also returns the Bogoliubov matrix ``minus (phi_hat - 1)`` and ``plus``
    recomputed by the two alternative recursions, for cross-checks.
    """
    n = phi_hat.n
    one = TriMatrix.identity(n)
    a = phi_hat._nilpart()
    minus = _solve_left(a, minimal_subtraction)
    plus_inv = _solve_right(a, holomorphic_part)
    plus = plus_inv.inverse_unipotent()
    bog = minus * a
    b = phi_hat.inverse_unipotent() - one
    plus_mm = _solve_left(b, holomorphic_part)
    plus_mmm = one + bog.rb_tilde()
    return AtkinsonResult(minus, plus, plus_inv, bog, plus_mm, plus_mmm)


def atkinson_identity(phi_hat: TriMatrix, res: AtkinsonResult) -> bool:
    """``X (1 + a) Y = 1`` with ``X = minus``, ``Y = plus^{-1}``."""
    return (res.minus * phi_hat * res.plus_inv).agrees(TriMatrix.identity(phi_hat.n))


def _chains(i: int, j: int):
    """Strictly decreasing index chains ``i > l_1 > ... > l_m > j``, as full paths."""
    inner = range(i - 1, j, -1)
    for m in range(0, i - j):
        for mid in combinations(inner, m):
            yield (i,) + mid + (j,)


def chain_sum_left(s: TriMatrix, proj: Callable[[LaurentSeries], LaurentSeries], i: int, j: int) -> LaurentSeries:
    """``sum over chains of (-1)^k P(P(...P(s_{i l1}) s_{l1 l2}) ... s_{l j})``, ``k`` factors."""
    total = _ZERO
    for path in _chains(i, j):
        v = proj(s.rows[path[0]][path[1]])
        for a, b in zip(path[1:], path[2:]):
            v = proj(v * s.rows[a][b])
        k = len(path) - 1
        total = total + (v if k % 2 == 0 else -v)
    return total


def chain_sum_right(s: TriMatrix, proj: Callable[[LaurentSeries], LaurentSeries], i: int, j: int) -> LaurentSeries:
    """``sum over chains of (-1)^k P(s_{i l1} P(s_{l1 l2} ... P(s_{l j})))``."""
    total = _ZERO
    for path in _chains(i, j):
        v = proj(s.rows[path[-2]][path[-1]])
        for a, b in zip(reversed(path[:-2]), reversed(path[1:-1])):
            v = proj(s.rows[a][b] * v)
        k = len(path) - 1
        total = total + (v if k % 2 == 0 else -v)
    return total


def nonrecursive_entries(phi_hat: TriMatrix, max_size: int = 16) -> tuple[TriMatrix, TriMatrix]:
    """``(minus, plus^{-1})`` by explicit sums over index chains.

    ``minus`` nests ``pi`` to the left, ``plus^{-1}`` nests ``1 - pi`` to the
    right.  The number of chains doubles with the index gap, hence the size
    guard.
    """
    n = phi_hat.n
    if n > max_size:
        raise ValueError(f"explicit chain sums limited to size {max_size}")
    minus = TriMatrix.from_function(n, lambda i, j: _ONE if i == j else chain_sum_left(phi_hat, minimal_subtraction, i, j))
    plus_inv = TriMatrix.from_function(
        n, lambda i, j: _ONE if i == j else chain_sum_right(phi_hat, holomorphic_part, i, j)
    )
    return minus, plus_inv


def inverse_chain_plus(phi_hat: TriMatrix) -> TriMatrix:
    """Left-nested ``1 - pi`` chain sums applied to ``phi_hat^{-1}``.

    The recursion ``plus = 1 - R~(plus (phi_hat^{-1} - 1))`` has the shape of
    the counter-term recursion, so this is a closed form for ``plus`` itself.
    """
    s = phi_hat.inverse_unipotent()
    return TriMatrix.from_function(phi_hat.n, lambda i, j: _ONE if i == j else chain_sum_left(s, holomorphic_part, i, j))


# --- grading and beta function -------------------------------------------------

def z0_matrix(basis: CoidealBasis) -> TriMatrix:
    return TriMatrix.diag([LaurentSeries.const(d) for d in basis.degrees])


def exp_z0(basis: CoidealBasis, t, config: Config = DEFAULT) -> TriMatrix:
    """``exp(t z Z0)`` for rational or TAU-polynomial ``t``."""
    return TriMatrix.diag([flow_factor(d, t, config) for d in basis.degrees])


def scale_conjugate(phi_hat: TriMatrix, basis: CoidealBasis, t, config: Config = DEFAULT) -> TriMatrix:
    """``exp(t z Z0) phi_hat exp(-t z Z0)`` by entry scaling ``exp(t z (d_i - d_j))``."""
    d = basis.degrees
    return TriMatrix.from_function(phi_hat.n, lambda i, j: flow_factor(d[i] - d[j], t, config) * phi_hat.rows[i][j])


def _require_constant(m: TriMatrix, what: str) -> TriMatrix:
    if not m.constant_entries():
        raise MatrixConsistencyError(f"{what}: entries are not constant (phi not local, or precision too low)")
    return m


def beta_matrix(minus: TriMatrix, z0: TriMatrix) -> TriMatrix:
    """``minus (z Z0) minus^{-1} - z Z0``."""
    zz = z0.shift(1)
    return _require_constant(minus * zz * minus.inverse_unipotent() - zz, "beta (conjugation)")


def beta_matrix_commutator(minus: TriMatrix, z0: TriMatrix) -> TriMatrix:
    """``[Res minus, Z0]``."""
    return _require_constant(minus.residue().commutator(z0), "beta (commutator)")


def bch_generator(minus: TriMatrix) -> TriMatrix:
    """``R(chi) = -log minus``, the pole-part generator with ``minus = exp(-R(chi))``."""
    return -minus.log_unipotent()


def nested_commutator_sum(x: TriMatrix, z0: TriMatrix) -> TriMatrix:
    """``z sum_{n>0} ad_x^n(Z0) / n!``, i.e. ``exp(x) (z Z0) exp(-x) - z Z0``."""
    out = TriMatrix.zeros(x.n)
    term = z0
    for k in range(1, x.n):
        term = x.commutator(term)
        out = out + term.scale(mpq(1, factorial(k)))
    return out.shift(1)


def beta_matrix_bch(minus: TriMatrix, z0: TriMatrix) -> TriMatrix:
    """Nested commutators in ``log minus = -R(chi)``.

    The conjugation form needs ``exp(x) = minus``, hence ``x = -R(chi)``;
    with ``x = +R(chi)`` the sum conjugates by ``minus^{-1}`` instead.
    """
    return _require_constant(nested_commutator_sum(-bch_generator(minus), z0), "beta (nested commutators)")


def beta_psi(phi: LinearMap, basis: CoidealBasis, pair=None) -> TriMatrix:
    """``Psi[beta]`` from the scalar beta function."""
    vals = beta_scalar(phi, basis.trees, pair)
    beta = LinearMap(lambda t: LaurentSeries.const(vals[t] if t in vals else _missing(t)), INFINITESIMAL, "beta")
    return psi(beta, basis)


def _missing(t: Tree):
    raise KeyError(f"beta not computed for {t}")


# --- flow identities -------------------------------------------------------------

@dataclass(frozen=True)
class FlowReport:
    """Named identity -> holds?"""

    results: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.results)

    def failures(self) -> list[str]:
        return [k for k, v in self.results if not v]


def aplus_flow_check(phi_hat: TriMatrix, basis: CoidealBasis, config: Config = DEFAULT) -> FlowReport:
    """Flow identities as exact TAU polynomials (TAU-degree below ``tau_cap``).

    ``A(TAU) = phi_hat(TAU) exp(TAU z Z0) = exp(TAU z Z0) phi_hat(0)`` with
    ``phi_hat(TAU)`` the conjugated matrix, ``A_+ = plus(TAU) exp(TAU z Z0)``.
    """
    z0 = z0_matrix(basis)
    zz = z0.shift(1)
    e_pos = exp_z0(basis, TAU, config)
    e_neg = exp_z0(basis, -TAU, config)
    phi_t = scale_conjugate(phi_hat, basis, TAU, config)
    a = phi_t * e_pos
    checks: list[tuple[str, bool]] = []
    checks.append(("A(TAU) = exp(TAU z Z0) A(0)", a.agrees(e_pos * phi_hat)))
    checks.append(("dA/dTAU = z Z0 A", a.diff_tau().agrees(zz * a)))
    res0 = atkinson_factorize(phi_hat)
    res_t = atkinson_factorize(phi_t)
    checks.append(("d/dTAU minus = 0", res_t.minus.diff_tau().is_zero() and res_t.minus.agrees(res0.minus)))
    beta = beta_matrix(res0.minus, z0)
    a_plus = res_t.plus * e_pos
    a_plus_inv = e_neg * res_t.plus_inv
    checks.append(("dA_+/dTAU A_+^{-1} = beta + z Z0", (a_plus.diff_tau() * a_plus_inv).agrees(beta + zz)))
    gen = (beta + zz).scale(LaurentSeries({0: TAU}, tau_prec=config.tau_cap))
    flow = gen.exp() * res0.plus * e_neg
    checks.append(("plus(TAU) = exp(TAU(beta + z Z0)) plus(0) exp(-TAU z Z0)", flow.agrees(res_t.plus)))
    checks.append(("minus(TAU) z Z0 minus(TAU)^{-1} = dA_+/dTAU A_+^{-1}",
                   (res_t.minus * zz * res_t.minus.inverse_unipotent()).agrees(a_plus.diff_tau() * a_plus_inv)))
    return FlowReport(tuple(checks))


# --- scattering formula --------------------------------------------------------------

def _u_power(k: int) -> LaurentSeries:
    if k < 0:
        raise MatrixConsistencyError(f"negative power U^{k} in scattering product")
    return LaurentSeries.const(SymPoly.monomial(1, u=k))


def scattering_product(minus: TriMatrix, basis: CoidealBasis) -> TriMatrix:
    """``minus exp(-t Z0) minus^{-1} exp(t Z0)`` with ``U = exp(-t)``."""
    inv = minus.inverse_unipotent()
    d = basis.degrees

    def entry(i: int, j: int) -> LaurentSeries:
        acc = _ZERO
        for k in range(j, i + 1):
            acc = acc + minus.rows[i][k] * inv.rows[k][j] * _u_power(d[k] - d[j])
        return acc

    return TriMatrix.from_function(minus.n, entry)


def scattering_limit(minus: TriMatrix, basis: CoidealBasis) -> TriMatrix:
    """``U -> 0`` limit of :func:`scattering_product`."""
    return scattering_product(minus, basis).u_to_zero()


def scattering_spectral(beta: TriMatrix, basis: CoidealBasis) -> TriMatrix:
    """``lim exp(-t N) exp(t Z0)``, ``N = beta / z + Z0``, via spectral projectors.

    ``N`` is diagonalizable with eigenvalues the degrees, so
    ``exp(-t N) = sum_lambda U^lambda P_lambda`` with
    ``P_lambda = prod_{mu != lambda} (N - mu) / (lambda - mu)``.
    """
    n = beta.n
    z0 = z0_matrix(basis)
    big_n = beta.shift(-1) + z0
    eig = sorted(set(basis.degrees))
    one = TriMatrix.identity(n)
    minimal = one
    for mu in eig:
        minimal = minimal * (big_n - one.scale(mu))
    if not minimal.is_zero():
        raise MatrixConsistencyError("beta/z + Z0 is not diagonalizable with the degrees as eigenvalues")
    proj = {}
    for lam in eig:
        p = one
        for mu in eig:
            if mu != lam:
                p = (p * (big_n - one.scale(mu))).scale(mpq(1, lam - mu))
        proj[lam] = p
    d = basis.degrees

    def entry(i: int, j: int) -> LaurentSeries:
        acc = _ZERO
        for lam, p in proj.items():
            v = p.rows[i][j]
            if v.coeffs:
                acc = acc + v * _u_power(lam - d[j])
        return acc

    return TriMatrix.from_function(n, entry).u_to_zero()


def scattering_psi(minus_char: LinearMap, basis: CoidealBasis) -> TriMatrix:
    """``Psi[phi_- * theta_{-t}(phi_-^{-1})]`` at ``U -> 0``."""
    inv = star_inverse(minus_char)
    damped = LinearMap(lambda t: inv.tree(t) * _u_power(t.degree), CHARACTER, "theta(-t)")
    return psi(convolve(minus_char, damped), basis).u_to_zero()


def antipode_matrix(m: HopfMatrix) -> HopfMatrix:
    """``S`` applied entrywise."""
    return m.map(antipode)

