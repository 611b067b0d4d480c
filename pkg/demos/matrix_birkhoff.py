"""Birkhoff decomposition as a factorization of lower-triangular matrices.

The toy character is represented on the coideal spanned by the trees under
``[[][][]]``; the pole-part factor is recovered three ways and the beta
function is read off as a constant matrix.
"""

from treerenorm.characters import toy_character
from treerenorm.config import Config
from treerenorm.forests import parse_tree
from treerenorm.matrix_rep import (
    atkinson_factorize,
    beta_matrix,
    coideal_closure,
    coproduct_matrix,
    nonrecursive_entries,
    psi,
    scattering_limit,
    scattering_spectral,
    z0_matrix,
)

config = Config(max_degree=4, z_hi=4)
basis = coideal_closure([parse_tree("[[][][]]")])
labels = basis.labels()
print("basis:", ", ".join(labels))
print(coproduct_matrix(basis).text())

phi_hat = psi(toy_character(config), basis)
res = atkinson_factorize(phi_hat)
print("\ncounter-term matrix:")
print(res.minus.text(labels))

minus, _ = nonrecursive_entries(phi_hat)
print("\nchain sums reproduce it:", minus.agrees(res.minus))

beta = beta_matrix(res.minus, z0_matrix(basis))
print("\nbeta matrix (constant entries):")
print(beta.text(labels))

print("\nscattering limit = counter-term:", scattering_limit(res.minus, basis).agrees(res.minus))
print("spectral route agrees:", scattering_spectral(beta, basis).agrees(res.minus))
