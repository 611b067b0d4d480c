"""Why Res R(phi) is not the beta function of the counter-term.

``R(phi) = phi^{-1} * (phi o Y)`` generates the one-parameter group ``F_t``,
but its residue is the beta function conjugated by the renormalized
character at ``z = 0``.  For the toy model ``phi_+(0)`` is not the counit, and
the two differ already on the cherry.
"""

from treerenorm.birkhoff import birkhoff_decompose
from treerenorm.characters import beta_expressions, rg_generator_check, toy_character
from treerenorm.config import Config
from treerenorm.forests import enumerate_trees

config = Config(max_degree=4, z_hi=4)
phi = toy_character(config)
pair = birkhoff_decompose(phi)
trees = [t for n in range(1, 4) for t in enumerate_trees(n)]

print(f"{'tree':<10}{'Res R(phi)':<16}{'Res(phi_-^-1 Y)':<18}{'-Res(phi_- Y)'}")
for t, (b1, b2, b3) in beta_expressions(phi, trees, pair).items():
    print(f"{str(t):<10}{str(b1):<16}{str(b2):<18}{b3}")

ok, bad = rg_generator_check(phi, trees, pair)
print(f"\nRes R(phi) = phi_+(0)^-1 * beta * phi_+(0) on all trees of degree <= 3: {ok}")
print(f"phi_+([])(0) = {pair.plus.tree(trees[0]).coeff(0)}, so phi_+(0) is not the counit")
