"""
The endomorphism algebra F
==========================

V is the direct sum of k[P/Q] over all subgroups Q of P, and F = End_kP(V).
F is stored as structure constants on a basis adapted to its Peirce blocks.
"""

import numpy as np

from domdim.endo import build_V, end_algebra, validate_algebra
from domdim.gfp import PrimeField
from domdim.groups import cyclic, elementary_abelian

f = PrimeField(2)
for g in [cyclic(2), cyclic(4), elementary_abelian(2, 2)]:
    v = build_V(g, f)
    e = end_algebra(v)
    rep = validate_algebra(e.algebra, e.peirce)
    print(f"{g.name}: dim V = {v.degree}, dim F = {e.dim}, valid = {rep.ok}")

# F(C2) is 5-dimensional; look at it as actual 3x3 matrices
e = end_algebra(build_V(cyclic(2), f))
mats = e.matrices()
print(mats.shape)  # (5, 3, 3)
x, y = e.algebra.basis_vector(1), e.algebra.basis_vector(2)
lhs = np.einsum("a,aij->ij", e.algebra.mul(x, y), mats) % 2
print(np.array_equal(lhs, mats[1] @ mats[2] % 2))  # the product agrees with matrix product
