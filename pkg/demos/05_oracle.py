"""
A brute-force cross-check
=========================

For algebras of dimension at most 6 over GF(2) we can find the minimal
injective coresolution of the regular module by direct search, and read
the dominant dimension off it without any group theory.
"""

import numpy as np

from domdim.ddim import ddim_mueller
from domdim.endo import StructureConstantAlgebra, build_V, end_algebra
from domdim.gfp import PrimeField
from domdim.groups import cyclic
from domdim.oracle import brute_ddim_small, group_algebra

f = PrimeField(2)
v = build_V(cyclic(2), f)
print("F(C2) by search:", brute_ddim_small(end_algebra(v).algebra))
print("F(C2) by Ext:   ", ddim_mueller(v))

# group algebras are self-injective
print("kC4:", brute_ddim_small(group_algebra(cyclic(4), f)))

# upper triangular 2x2 matrices: basis e11, e12, e22
t = np.zeros((3, 3, 3), dtype=np.int64)
t[0, 0, 0] = t[0, 1, 1] = t[1, 2, 1] = t[2, 2, 2] = 1
print("T2:", brute_ddim_small(StructureConstantAlgebra.from_dense(f, t, [1, 0, 1])))
