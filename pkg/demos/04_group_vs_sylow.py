"""
Group algebra versus Sylow subgroup
===================================

When p divides |G| but not [G:P], the algebra built from all subgroups of G
and the one built from P have the same dominant dimension. S3 at p = 3 and
D10 at p = 5 are small cases.
"""

from domdim.ddim import remark_check, verify_theorem2_instance
from domdim.groups import dihedral, symmetric

for g, p in [(symmetric(3), 3), (dihedral(10), 5)]:
    r = verify_theorem2_instance(g, p)
    print(f"{g.name} at p={p}: kG gives {r.ddim_group}, kP gives {r.ddim_sylow}, hypotheses ok = {r.hypotheses_ok}")

    # Ext^1(U, U) contains Ext^1(k, k), which is nonzero
    rc = remark_check(g, p)
    print(f"  Ext^1(U, U) = {rc.ext1_U} >= Ext^1(k, k) = {rc.ext1_k}")
