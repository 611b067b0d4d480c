"""Non-planar rooted trees, forests and admissible cuts.

Trees are stored canonically (children sorted by :func:`canonical_order`),
so structural equality coincides with isomorphism of non-planar trees.  The
only external syntax is the bracket string: ``"[]"`` is a single vertex and
the children of a vertex are written inside its brackets, e.g. the cherry is
``"[[][]]"`` and the three-vertex ladder is ``"[[[]]]"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from itertools import combinations
from math import prod
from typing import Iterable, Iterator

__all__ = [
    "Tree",
    "Forest",
    "Cut",
    "TreeSyntaxError",
    "parse_tree",
    "parse_forest",
    "canonical_order",
    "tree_factorial",
    "tree_factorial_by_cuts",
    "enumerate_trees",
    "enumerate_forests",
    "admissible_cuts",
    "DOT",
    "LADDER2",
    "LADDER3",
    "CHERRY",
    "TH43",
    "TF41",
]


class TreeSyntaxError(ValueError):
    """Malformed bracket string; ``position`` is the offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@total_ordering
class Tree:
    """Immutable canonical non-planar rooted tree."""

    __slots__ = ("children", "degree", "_key", "_hash")

    def __init__(self, children: Iterable[Tree] = ()):
        kids = tuple(sorted(children))
        self.children: tuple[Tree, ...] = kids
        self.degree: int = 1 + sum(c.degree for c in kids)
        # sort key: degree first, then the children's keys in canonical order
        self._key = (self.degree, tuple(c._key for c in kids))
        self._hash = hash(self._key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self._key == other._key

    def __lt__(self, other: Tree) -> bool:
        return self._key < other._key

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return self.degree

    def __str__(self) -> str:
        return "[" + "".join(str(c) for c in self.children) + "]"

    def __repr__(self) -> str:
        return f"Tree({self})"

    def vertices(self) -> Iterator[Tree]:
        """Subtrees rooted at each vertex, pre-order."""
        yield self
        for c in self.children:
            yield from c.vertices()


def canonical_order(a: Tree, b: Tree) -> int:
    """-1, 0 or 1.

    Trees compare by degree first; equal degrees compare the sorted child
    lists lexicographically (each child by the same rule).  Among the two
    trees of degree 3 the cherry ``[[][]]`` precedes the ladder ``[[[]]]``
    because its first child ``[]`` precedes ``[[]]``.
    """
    if a == b:
        return 0
    return -1 if a < b else 1


@total_ordering
class Forest:
    """Commutative monomial of trees; the empty forest is the unit."""

    __slots__ = ("trees", "degree", "_hash")

    def __init__(self, trees: Iterable[Tree] = ()):
        self.trees: tuple[Tree, ...] = tuple(sorted(trees))
        self.degree: int = sum(t.degree for t in self.trees)
        self._hash = hash(self.trees)

    @classmethod
    def of(cls, *trees: Tree) -> Forest:
        return cls(trees)

    def __mul__(self, other: Forest) -> Forest:
        if not other.trees:
            return self
        if not self.trees:
            return other
        return Forest(self.trees + other.trees)

    def __eq__(self, other) -> bool:
        return isinstance(other, Forest) and self.trees == other.trees

    def __lt__(self, other: Forest) -> bool:
        return (self.degree, len(self.trees), self.trees) < (other.degree, len(other.trees), other.trees)

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def is_unit(self) -> bool:
        return not self.trees

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.trees) if self.trees else "1"

    def __repr__(self) -> str:
        return f"Forest({self})"


UNIT = Forest()


@dataclass(frozen=True)
class Cut:
    """An admissible cut: pruned forest ``P_c(t)`` and cotree ``R_c(t)``."""

    pruned: Forest
    cotree: Tree


def parse_tree(text: str) -> Tree:
    text = text.strip()
    if not text:
        raise TreeSyntaxError("empty tree string", 0)
    stack: list[list[Tree]] = []
    root = None
    for pos, ch in enumerate(text):
        if ch == "[":
            if root is not None:
                raise TreeSyntaxError("text after the root tree", pos)
            stack.append([])
        elif ch == "]":
            if not stack:
                raise TreeSyntaxError("unbalanced ']'", pos)
            node = Tree(stack.pop())
            if stack:
                stack[-1].append(node)
            else:
                root = node
        elif ch.isspace():
            continue
        else:
            raise TreeSyntaxError(f"unexpected character {ch!r}", pos)
    if stack:
        raise TreeSyntaxError("unclosed '['", len(text))
    assert root is not None
    return root


def parse_forest(text: str) -> Forest:
    """Space-separated bracket strings; ``"1"`` or ``""`` is the empty forest."""
    text = text.strip()
    if text in ("", "1"):
        return UNIT
    trees = []
    depth = 0
    start = None
    for pos, ch in enumerate(text):
        if ch == "[":
            if depth == 0:
                start = pos
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise TreeSyntaxError("unbalanced ']'", pos)
            if depth == 0:
                trees.append(parse_tree(text[start : pos + 1]))
        elif not ch.isspace() and depth == 0:
            raise TreeSyntaxError(f"unexpected character {ch!r}", pos)
    if depth:
        raise TreeSyntaxError("unclosed '['", len(text))
    return Forest(trees)


def tree_factorial(t: Tree) -> int:
    """Product over vertices of the size of the subtree rooted there."""
    return prod(v.degree for v in t.vertices())


def tree_factorial_by_cuts(t: Tree) -> int:
    """Same number, read off the single-edge cuts plus the full cut."""
    w = t.degree
    for cut in admissible_cuts(t):
        # each pruned tree hangs off exactly one removed edge
        if len(cut.pruned) == 1:
            w *= cut.pruned.trees[0].degree
    return w


# --- flat vertex representation used for cutting ---------------------------

def _flatten(t: Tree) -> tuple[list[int], list[Tree]]:
    """Parent array (root = -1) and the subtree at each vertex, pre-order."""
    parents: list[int] = []
    subtrees: list[Tree] = []

    def walk(node: Tree, parent: int) -> None:
        idx = len(parents)
        parents.append(parent)
        subtrees.append(node)
        for c in node.children:
            walk(c, idx)

    walk(t, -1)
    return parents, subtrees


def _rebuild(idx: int, kids: list[list[int]], removed: frozenset[int]) -> Tree:
    return Tree(_rebuild(c, kids, removed) for c in kids[idx] if c not in removed)


@lru_cache(maxsize=None)
def admissible_cuts(t: Tree) -> tuple[Cut, ...]:
    """All admissible cuts except the empty and the full one.

    Edges are labelled by their lower vertex; a nonempty edge set is
    admissible when no cut vertex is an ancestor of another.
    """
    parents, subtrees = _flatten(t)
    n = len(parents)
    kids: list[list[int]] = [[] for _ in range(n)]
    for v, p in enumerate(parents):
        if p >= 0:
            kids[p].append(v)
    ancestors: list[set[int]] = []
    for v in range(n):
        anc = set()
        p = parents[v]
        while p >= 0:
            anc.add(p)
            p = parents[p]
        ancestors.append(anc)
    edges = list(range(1, n))
    cuts = []
    for r in range(1, len(edges) + 1):
        for subset in combinations(edges, r):
            chosen = set(subset)
            if any(ancestors[v] & chosen for v in subset):
                continue
            pruned = Forest(subtrees[v] for v in subset)
            cotree = _rebuild(0, kids, frozenset(subset))
            cuts.append(Cut(pruned, cotree))
    return tuple(cuts)


@lru_cache(maxsize=None)
def _forests_of_degree(n: int, max_tree: Tree | None) -> tuple[tuple[Tree, ...], ...]:
    """Multisets of trees of total degree n, trees listed non-increasing, each <= max_tree."""
    if n == 0:
        return ((),)
    out = []
    for d in range(min(n, max_tree.degree if max_tree else n), 0, -1):
        for t in reversed(enumerate_trees(d)):
            if max_tree is not None and max_tree < t:
                continue
            for rest in _forests_of_degree(n - d, t):
                out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _enumerate_trees(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (Tree(),)
    return tuple(sorted(Tree(children) for children in _forests_of_degree(n - 1, None)))


def enumerate_trees(n: int) -> list[Tree]:
    """All trees with ``n`` vertices in canonical order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return list(_enumerate_trees(n))


def enumerate_forests(n: int) -> list[Forest]:
    """All forests of total degree ``n`` (``n = 0`` gives the unit)."""
    return sorted(Forest(f) for f in _forests_of_degree(n, None))


DOT = Tree()
LADDER2 = Tree([DOT])
LADDER3 = Tree([LADDER2])
CHERRY = Tree([DOT, DOT])
TH43 = Tree([DOT, DOT, DOT])
TF41 = Tree([LADDER2, DOT])
