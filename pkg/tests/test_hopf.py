from itertools import combinations

import pytest

from treerenorm import golden
from treerenorm.forests import enumerate_forests, enumerate_trees, parse_forest, parse_tree
from treerenorm.hopf import (
    HopfElement,
    TensorElement,
    antipode,
    antipode_geometric,
    antipode_right,
    apply_grading,
    coassociativity_sides,
    coproduct,
    counit,
    product,
    reduced_coproduct,
    theta,
)


def all_forests(n):
    return [f for d in range(n + 1) for f in enumerate_forests(d)]


def components_after_removing(t, removed_edges):
    """Trees left after deleting edges; edges are identified by their child vertex id."""
    parents, kids = [None], {0: []}

    def build(node, me):
        for c in node.children:
            i = len(parents)
            parents.append(me)
            kids[i] = []
            kids[me].append(i)
            build(c, i)

    build(t, 0)

    def bracket(v):
        return "[" + "".join(sorted(bracket(c) for c in kids[v] if c not in removed_edges)) + "]"

    roots = [0] + sorted(removed_edges)
    return parse_forest(" ".join(bracket(r) for r in roots)), len(parents)


def antipode_by_edge_subsets(t):
    """S(t) = -sum over all edge subsets C of (-1)^|C| times the forest left by deleting C."""
    n = t.degree
    out = HopfElement()
    for r in range(n):
        for c in combinations(range(1, n), r):
            f, _ = components_after_removing(t, set(c))
            out = out + HopfElement.of(f, -((-1) ** r))
    return out


@pytest.mark.parametrize("text", sorted(golden.COPRODUCTS))
def test_golden_coproducts(text):
    want = TensorElement.from_pairs((c, parse_forest(a), parse_forest(b)) for c, a, b in golden.COPRODUCTS[text])
    assert coproduct(parse_forest(text)) == want


@pytest.mark.parametrize("text", sorted(golden.ANTIPODES))
def test_golden_antipodes(text):
    s = antipode(parse_tree(text))
    assert str(s) == golden.ANTIPODES[text]
    assert HopfElement.parse(str(s)) == s


def test_antipode_against_edge_subset_formula():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert antipode(t) == antipode_by_edge_subsets(t), str(t)


@pytest.mark.parametrize("f", all_forests(5), ids=str)
def test_hopf_axioms(f):
    left, right = coassociativity_sides(f)
    assert left == right
    d = coproduct(f)
    # (eps (x) id) and (id (x) eps)
    assert sum((HopfElement.of(b, c * counit(HopfElement.of(a))) for (a, b), c in d.terms.items()),
               HopfElement()) == HopfElement.of(f)
    assert sum((HopfElement.of(a, c * counit(HopfElement.of(b))) for (a, b), c in d.terms.items()),
               HopfElement()) == HopfElement.of(f)
    # m (S (x) id) Delta = eta eps = m (id (x) S) Delta
    eta_eps = HopfElement.unit() if f.is_unit() else HopfElement()
    lhs = sum((product(antipode(a), b) * c for (a, b), c in d.terms.items()), HopfElement())
    rhs = sum((product(a, antipode(b)) * c for (a, b), c in d.terms.items()), HopfElement())
    assert lhs == eta_eps
    assert rhs == eta_eps
    assert antipode(f) == antipode_right(f) == antipode_geometric(f)


def test_coproduct_is_graded_and_multiplicative():
    for f in all_forests(4):
        for (a, b), _ in coproduct(f).terms.items():
            assert a.degree + b.degree == f.degree
    a, b = parse_forest("[[]]"), parse_forest("[[][]]")
    assert coproduct(a * b) == coproduct(a) * coproduct(b)


def test_antipode_is_involutive_and_multiplicative():
    # commutative Hopf algebra: S o S = id and S(xy) = S(x)S(y)
    for f in all_forests(4):
        assert antipode(antipode(f)) == HopfElement.of(f)
    x, y = parse_forest("[[]]"), parse_forest("[[[]]]")
    assert antipode(x * y) == product(antipode(x), antipode(y))


def test_reduced_coproduct_of_primitive():
    assert reduced_coproduct(parse_tree("[]")).is_zero()
    assert not reduced_coproduct(parse_tree("[[]]")).is_zero()


def test_counit_and_grading():
    assert counit(HopfElement.unit()) == 1
    assert counit(parse_tree("[]")) == 0
    assert apply_grading(parse_forest("[] [[]]")) == HopfElement.of(parse_forest("[] [[]]"), 3)


def test_element_parsing_and_printing():
    e = HopfElement.parse("-[[][]] + 2 [] [[]] - [] [] []")
    assert str(e) == "-[[][]] + 2 [] [[]] - [] [] []"
    assert str(HopfElement()) == "0"
    assert str(HopfElement.parse("1/2 [] - 1")) == "-1 + 1/2 []"


def test_theta_group_law():
    x = HopfElement.parse("[] + 3 [[]] [] - [[][]]")
    assert theta(theta(x, "1/2"), "1/3") == theta(x, "5/6")
