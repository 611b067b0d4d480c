"""Worked examples from the literature on the tree Hopf algebra, as data.

Coproducts are lists of ``(coefficient, left, right)`` bracket strings; the
coproduct matrix rows list the entries left to right.
"""

COPRODUCTS = {
    "[]": [(1, "[]", "1"), (1, "1", "[]")],
    "[[]]": [(1, "[[]]", "1"), (1, "1", "[[]]"), (1, "[]", "[]")],
    "[] []": [(1, "[] []", "1"), (1, "1", "[] []"), (2, "[]", "[]")],
    "[[][]]": [(1, "[[][]]", "1"), (1, "1", "[[][]]"), (2, "[]", "[[]]"), (1, "[] []", "[]")],
    "[] [[]]": [
        (1, "[] [[]]", "1"),
        (1, "1", "[] [[]]"),
        (1, "[] []", "[]"),
        (1, "[]", "[] []"),
        (1, "[[]]", "[]"),
        (1, "[]", "[[]]"),
    ],
    "[[][][]]": [
        (1, "[[][][]]", "1"),
        (1, "1", "[[][][]]"),
        (3, "[]", "[[][]]"),
        (3, "[] []", "[[]]"),
        (1, "[] [] []", "[]"),
    ],
}

ANTIPODES = {
    "[]": "-[]",
    "[[]]": "-[[]] + [] []",
    "[[][]]": "-[[][]] + 2 [] [[]] - [] [] []",
    "[[][][]]": "-[[][][]] + 3 [] [[][]] - 3 [] [] [[]] + [] [] [] []",
}

TREE_FACTORIALS = {
    "[]": 1,
    "[[]]": 2,
    "[[[]]]": 6,
    "[[][]]": 3,
    "[[][[]]]": 8,
    "[[][][]]": 4,
}

# coideal generated by [[][][]]; index 1 is the unit
COPRODUCT_MATRIX_SEED = "[[][][]]"
COPRODUCT_MATRIX = [
    ["1", "0", "0", "0", "0"],
    ["[]", "1", "0", "0", "0"],
    ["[[]]", "[]", "1", "0", "0"],
    ["[[][]]", "[] []", "2 []", "1", "0"],
    ["[[][][]]", "[] [] []", "3 [] []", "3 []", "1"],
]

Z0_DIAGONAL = [0, 1, 2, 3, 4]

# Psi[toy phi] on the same coideal: (coefficient, alpha power k, B indices)
# meaning coefficient * alpha^{-k z} * prod B_n.  Entry (4,1) is B_3 B_1^2.
PSI_TOY = {
    (2, 1): (1, 1, (1,)),
    (3, 1): (1, 2, (2, 1)),
    (3, 2): (1, 1, (1,)),
    (4, 1): (1, 3, (3, 1, 1)),
    (4, 2): (1, 2, (1, 1)),
    (4, 3): (2, 1, (1,)),
    (5, 1): (1, 4, (4, 1, 1, 1)),
    (5, 2): (1, 3, (1, 1, 1)),
    (5, 3): (3, 2, (1, 1)),
    (5, 4): (3, 1, (1,)),
}

# toy character on single trees: alpha power and B indices
TOY_VALUES = {
    "[]": (1, (1,)),
    "[[]]": (2, (2, 1)),
    "[[][]]": (3, (3, 1, 1)),
    "[[][][]]": (4, (4, 1, 1, 1)),
    "[[][[]]]": (4, (4, 2, 1, 1)),
}
