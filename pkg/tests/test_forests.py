from collections import Counter
from itertools import combinations, permutations, product
from math import factorial

import pytest

from treerenorm.forests import (
    CHERRY,
    DOT,
    LADDER2,
    TH43,
    Forest,
    Tree,
    TreeSyntaxError,
    admissible_cuts,
    enumerate_forests,
    enumerate_trees,
    parse_forest,
    parse_tree,
    tree_factorial,
    tree_factorial_by_cuts,
)

# rooted unlabeled trees, OEIS A000081
A000081 = [1, 1, 2, 4, 9, 20, 48, 115]


def parent_arrays(n):
    """Every labeled tree on 0..n-1 rooted at 0 with parent[i] < i."""
    for parents in product(*[range(i) for i in range(1, n)]):
        yield (None,) + parents


def children_of(parents):
    kids = {i: [] for i in range(len(parents))}
    for i, p in enumerate(parents):
        if p is not None:
            kids[p].append(i)
    return kids


def bracket(kids, v, skip=frozenset()):
    return "[" + "".join(sorted(bracket(kids, c, skip) for c in kids[v] if c not in skip)) + "]"


def test_tree_counts_match_brute_force():
    for n in range(1, 8):
        trees = enumerate_trees(n)
        assert len(trees) == A000081[n - 1]
        if n <= 7:
            brute = {parse_tree(bracket(children_of(p), 0)) for p in parent_arrays(n)}
            assert brute == set(trees)


def test_forest_count_is_next_tree_count():
    # grafting a forest onto a new root is a bijection
    for n in range(0, 7):
        assert len(enumerate_forests(n)) == A000081[n]


def test_enumeration_is_sorted_and_unique():
    trees = enumerate_trees(6)
    assert trees == sorted(set(trees))


@pytest.mark.parametrize("text", ["[]", "[[]]", "[[][]]", "[[[]][]]", "[[][[]]]", "[[[[]]]]"])
def test_parse_roundtrip(text):
    t = parse_tree(text)
    assert parse_tree(str(t)) == t
    assert t.degree == text.count("[")


def test_non_planar_equality():
    assert parse_tree("[[[]][]]") == parse_tree("[[][[]]]")
    assert parse_forest("[] [[]]") == parse_forest("[[]] []")


@pytest.mark.parametrize("bad", ["", "[", "]", "[]]", "[[]", "[a]", "[] x"])
def test_parse_errors(bad):
    with pytest.raises((TreeSyntaxError, ValueError)):
        parse_tree(bad)


def test_parse_forest_unit():
    assert parse_forest("1").is_unit()
    assert Forest.of(DOT, LADDER2).degree == 3


def brute_cuts(t: Tree):
    """Admissible cuts by testing every edge subset against the root-path condition."""
    parents = [None]
    kids = {0: []}

    def build(node, me):
        for c in node.children:
            i = len(parents)
            parents.append(me)
            kids[i] = []
            kids[me].append(i)
            build(c, i)

    build(t, 0)
    edges = list(range(1, len(parents)))  # edge identified with its lower vertex

    def ancestors(v):
        while parents[v] is not None:
            yield v
            v = parents[v]

    out = Counter()
    for r in range(1, len(edges) + 1):
        for cut in combinations(edges, r):
            s = set(cut)
            if any(len(s & set(ancestors(v))) > 1 for v in range(len(parents))):
                continue
            pruned = sorted(bracket(kids, v, frozenset(s - {v})) for v in cut)
            # cotree keeps vertices with no cut edge on their root path
            cot = bracket(kids, 0, frozenset(s))
            out[(str(parse_forest(" ".join(pruned))), str(parse_tree(cot)))] += 1
    return out


def test_admissible_cuts_brute_force():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            got = Counter((str(c.pruned), str(c.cotree)) for c in admissible_cuts(t))
            assert got == brute_cuts(t), str(t)


def heap_orderings(t: Tree) -> int:
    parents = [None]

    def build(node, me):
        for c in node.children:
            parents.append(me)
            build(c, len(parents) - 1)

    build(t, 0)
    n = len(parents)
    count = 0
    for perm in permutations(range(n)):
        if perm[0] == 0 and all(perm[i] > perm[parents[i]] for i in range(1, n)):
            count += 1
    return count


def test_tree_factorial_counts_increasing_labelings():
    # n!/t! increasing labelings of a tree with n vertices
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert tree_factorial(t) * heap_orderings(t) == factorial(n)
            assert tree_factorial_by_cuts(t) == tree_factorial(t)


def test_named_trees():
    assert str(CHERRY) == "[[][]]"
    assert str(TH43) == "[[][][]]"
    assert len(admissible_cuts(CHERRY)) == 3
