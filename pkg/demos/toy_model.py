"""Counter-terms, renormalized values and the beta function of the toy model.

Run with ``python3 demos/toy_model.py``.
"""

from treerenorm.birkhoff import birkhoff_decompose, locality_check
from treerenorm.characters import beta_scalar, renorm_group, toy_character
from treerenorm.config import Config
from treerenorm.forests import enumerate_trees

config = Config(max_degree=4, z_hi=4)
phi = toy_character(config)
pair = birkhoff_decompose(phi)

print("counter-terms (pure poles, no log(a/mu)):")
for n in range(1, 4):
    for t in enumerate_trees(n):
        print(f"  phi_-({t}) = {pair.minus.tree(t)}")

ok, witness = locality_check(pair, 4)
print(f"\nlocal up to degree 4: {ok}")

print("\nrenormalized values at z = 0:")
for t in enumerate_trees(3):
    print(f"  phi_+({t})(0) = {pair.plus.tree(t).coeff(0)}")

beta = beta_scalar(phi, [t for n in range(1, 5) for t in enumerate_trees(n)], pair)
print("\nbeta function (zero trees omitted):")
for t, v in beta.items():
    if v:
        print(f"  beta({t}) = {v}")

# F_t is finite because the counter-terms do not depend on the mass scale
f_half = renorm_group(phi, config)("1/2")
print(f"\nF_1/2([[][]]) = {f_half.tree(enumerate_trees(3)[0])}")
