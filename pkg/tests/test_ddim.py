import numpy as np
import pytest

from domdim.ddim import (
    AtLeast,
    DdimValue,
    Exact,
    Infinite,
    PreconditionError,
    comack_ddim,
    ddim_mueller,
    mueller_with_table,
    remark_check,
    verify_lower_bound_witness,
    verify_theorem2_instance,
)
from domdim.endo import StructureConstantAlgebra, build_V, end_algebra
from domdim.gfp import PrimeField
from domdim.groups import cyclic, dihedral, elementary_abelian, quaternion8, symmetric
from domdim.oracle import OracleError, brute_ddim_small, group_algebra
from domdim.rep import NotPGroupError, regular_module, trivial_module

F2, F3 = PrimeField(2), PrimeField(3)


def test_value_invariants():
    assert str(Exact(2)) == "2" and str(AtLeast(5)) == ">=5" and str(Infinite) == "infinite"
    assert Exact(2) == DdimValue("exact", 2) != AtLeast(2)
    with pytest.raises(ValueError):
        DdimValue("infinite", 3)
    with pytest.raises(ValueError):
        DdimValue("exact")
    with pytest.raises(ValueError):
        DdimValue("huge", 1)
    assert Infinite.to_json() == {"kind": "infinite", "value": None}


@pytest.mark.parametrize(
    "g, f",
    [(cyclic(2), F2), (cyclic(3), F3), (cyclic(4), F2), (elementary_abelian(2, 2), F2), (cyclic(9), F3)],
)
def test_mueller_gives_two(g, f):
    value, table = mueller_with_table(build_V(g, f))
    assert value == Exact(2)
    assert table[1] > 0


def test_mueller_needs_a_generator():
    g = cyclic(2)
    with pytest.raises(PreconditionError):
        ddim_mueller(trivial_module(g, F2))


def test_mueller_caps_when_all_ext_vanish():
    # End(kP) = kP is self-injective; every Ext vanishes so the rule can only bound it
    g = cyclic(4)
    assert ddim_mueller(regular_module(g, F2), cutoff=2) == AtLeast(4)


def test_mueller_is_infinite_in_coprime_characteristic():
    g = cyclic(3)
    assert ddim_mueller(build_V(g, F2)) == Infinite


def test_mueller_full_table_matches_individual_ext():
    v = build_V(cyclic(2), F2)
    value, table = mueller_with_table(v, cutoff=3, full_table=True)
    assert value == Exact(2) and sorted(table) == [1, 2, 3] and all(table.values())


def test_witness_dimensions_for_c2():
    w = verify_lower_bound_witness(build_V(cyclic(2), F2))
    assert w.exact and w.projective and w.module_maps
    r = w.ranks()
    assert (r["dim_F"], r["dim_J0"], r["hull_ranks"][0]) == (5, 6, 2)
    assert r["rank_F_to_J0"] == 5


def test_witness_for_trivial_group_is_degenerate():
    w = verify_lower_bound_witness(build_V(cyclic(1), F2))
    assert w.exact and w.dims["J0"] == w.dims["F"] == 1 and w.dims["J1"] == 0


def test_witness_requires_p_group():
    with pytest.raises(NotPGroupError):
        verify_lower_bound_witness(build_V(symmetric(3), F3))


@pytest.mark.parametrize("g, p", [(dihedral(8), 2), (quaternion8(), 2), (elementary_abelian(3, 2), 3)])
def test_witness_is_exact_on_larger_groups(g, p):
    w = verify_lower_bound_witness(build_V(g, PrimeField(p)))
    assert w.exact and w.projective and w.module_maps is not False


def test_comack_report_fields():
    r = comack_ddim(cyclic(2), 2, verify_double_cosets=True)
    assert r.ddim == Exact(2) and r.dim_F == 5 and r.subgroup_count == 2
    assert r.checks["double_cosets"] is True
    assert r.to_json()["timing_ms"] is None
    assert comack_ddim(cyclic(2), 2, timing=True).timing_ms >= 0


def test_comack_over_sylow_subgroup():
    r = comack_ddim(cyclic(6), 3)
    assert r.sylow_order == 3 and r.ddim == Exact(2) and r.dim_F == 6
    assert "whole-group-algebra, not per-block" in r.flags


def test_comack_trivial_defect():
    r = comack_ddim(cyclic(3), 2)
    assert r.ddim == Infinite and "trivial defect" in r.flags


def test_comack_single_block_group_is_not_flagged():
    r = comack_ddim(symmetric(3), 3)
    assert r.flags == [] and r.group_algebra["single_block"]
    assert r.group_algebra["ddim"] == Exact(2).to_json()


@pytest.mark.parametrize("g, p", [(symmetric(3), 3), (dihedral(10), 5), (cyclic(4), 2)])
def test_kg_and_kp_agree(g, p):
    rep = verify_theorem2_instance(g, p)
    assert rep.hypotheses_ok and rep.equal and rep.ddim_group == Exact(2)


def test_kg_kp_comparison_needs_coprime_index():
    with pytest.raises(PreconditionError):
        verify_theorem2_instance(cyclic(3), 2)
    with pytest.raises(PreconditionError):
        remark_check(cyclic(3), 2)


@pytest.mark.parametrize("g, p, ext_k", [(cyclic(2), 2, 1), (symmetric(3), 3, 1), (elementary_abelian(2, 2), 2, 2)])
def test_direct_ext_inequality(g, p, ext_k):
    r = remark_check(g, p)
    assert r.ok and r.ext1_k == ext_k and r.ext1_U >= ext_k


# -- brute-force oracle -----------------------------------------------------------


def test_oracle_on_the_ground_field():
    a = StructureConstantAlgebra(F2, 1, [(0, 0, 0)], [1], [1])
    assert brute_ddim_small(a) == Infinite


@pytest.mark.parametrize("g", [cyclic(2), cyclic(4), elementary_abelian(2, 2)])
def test_oracle_on_self_injective_group_algebras(g):
    assert brute_ddim_small(group_algebra(g, F2)) == Infinite


def test_oracle_on_upper_triangular_matrices():
    # the path algebra of 1 -> 2: its regular module has a non-projective injective hull
    t = np.zeros((3, 3, 3), dtype=np.int64)
    t[0, 0, 0] = t[0, 1, 1] = t[1, 2, 1] = t[2, 2, 2] = 1
    assert brute_ddim_small(StructureConstantAlgebra.from_dense(F2, t, [1, 0, 1])) == Exact(1)


def test_oracle_agrees_with_mueller_for_c2():
    v = build_V(cyclic(2), F2)
    assert brute_ddim_small(end_algebra(v).algebra) == ddim_mueller(v) == Exact(2)


def test_oracle_limits():
    with pytest.raises(OracleError):
        brute_ddim_small(group_algebra(cyclic(3), F3))
    with pytest.raises(OracleError):
        brute_ddim_small(end_algebra(build_V(cyclic(4), F2)).algebra)


def test_group_algebra_is_kg():
    g = symmetric(3)
    a = group_algebra(g, F3)
    assert a.dim == 6 and a.unit[0] == 1
    for i in range(6):
        for j in range(6):
            assert np.array_equal(a.mul(a.basis_vector(i), a.basis_vector(j)), a.basis_vector(g.mul(i, j)))
