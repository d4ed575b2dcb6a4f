"""
Permutation modules and double cosets
=====================================

Hom between two permutation modules k[G/Q] and k[G/R] has one basis vector
per double coset Q\\G/R. We check this for D8 over GF(2).
"""

import itertools

from domdim.gfp import PrimeField
from domdim.groups import dihedral, double_cosets
from domdim.rep import hom_dim, perm_module

g = dihedral(8)  # order 8
f = PrimeField(2)
print(g.name, "has", len(g.subgroups), "subgroups")

# one permutation module per subgroup, of degree [G:Q]
mods = {q: perm_module(g, q, f) for q in g.subgroups}
print("degrees:", [m.degree for m in mods.values()])

# compare Hom dimensions with double coset counts on every pair
agree = 0
for q, r in itertools.product(g.subgroups, repeat=2):
    agree += hom_dim(mods[q], mods[r]) == double_cosets(q, r)[0]
print(agree, "of", len(g.subgroups) ** 2, "pairs agree")
