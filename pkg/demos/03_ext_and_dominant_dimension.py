"""
Ext and the dominant dimension
==============================

V has kP as a summand, so ddim F = 2 + (number of vanishing Ext^i(V, V),
counted from i = 1). A nontrivial p-group always has Ext^1(V, V) != 0.
"""

from domdim.ddim import comack_ddim, mueller_with_table, verify_lower_bound_witness
from domdim.endo import build_V
from domdim.gfp import PrimeField
from domdim.groups import cyclic, quaternion8
from domdim.rep import ext_dim, trivial_module

f = PrimeField(2)
g = quaternion8()
k = trivial_module(g, f)
print("Ext^i(k, k) for Q8, i = 1..4:", [ext_dim(k, k, i) for i in range(1, 5)])

v = build_V(cyclic(4), f)
value, table = mueller_with_table(v, cutoff=3, full_table=True)
print("Ext^i(V, V) for C4:", table, "-> ddim", value)

# the lower bound, seen directly: 0 -> F -> J0 -> J1 exact with projective J's
w = verify_lower_bound_witness(v)
print({key: w.ranks()[key] for key in ("dim_F", "dim_J0", "dim_J1", "exact", "projective_terms")})

# the full pipeline, with the Hom dimension check against double cosets
r = comack_ddim(cyclic(4), 2, verify_double_cosets=True)
print(r.ddim, r.checks)

# coprime characteristic: kP is semisimple and nothing is bounded
print(comack_ddim(cyclic(3), 2).ddim, comack_ddim(cyclic(3), 2).flags)
