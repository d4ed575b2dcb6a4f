import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domdim.groups import (
    FiniteGroup,
    GroupError,
    OrderBoundError,
    centralizer,
    cyclic,
    dihedral,
    direct_product,
    double_coset_sizes,
    double_cosets,
    elementary_abelian,
    format_permutation,
    is_solvable,
    left_cosets,
    orbits,
    p_core,
    parse_permutations,
    permutation_group,
    quaternion8,
    single_block_certified,
    sylow_subgroup,
    symmetric,
)

SMALL = {
    "C1": cyclic(1),
    "C2": cyclic(2),
    "C4": cyclic(4),
    "V4": elementary_abelian(2, 2),
    "S3": symmetric(3),
    "C6": cyclic(6),
    "D8": dihedral(8),
    "Q8": quaternion8(),
    "C2^3": elementary_abelian(2, 3),
}


def brute_subgroups(g: FiniteGroup):
    """All subsets containing 1 and closed under multiplication."""
    out = set()
    rest = range(1, g.order)
    for r in range(g.order):
        for extra in itertools.combinations(rest, r):
            s = frozenset((0,) + extra)
            if all(g.mul(a, b) in s for a in s for b in s):
                out.add(s)
    return out


def brute_double_cosets(q, r):
    g = q.parent
    return {frozenset(g.mul(g.mul(a, x), b) for a in q.elements for b in r.elements) for x in range(g.order)}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_subgroups_match_subset_enumeration(name):
    g = SMALL[name]
    assert {frozenset(s.elements) for s in g.subgroups} == brute_subgroups(g)


@pytest.mark.parametrize(
    "g, count",
    [(cyclic(1), 1), (dihedral(4), 5), (quaternion8(), 6), (dihedral(8), 10), (symmetric(3), 6),
     (elementary_abelian(2, 3), 16), (elementary_abelian(3, 2), 6), (cyclic(9), 3),
     (permutation_group("(1 2 3)(4 5)"), 4)],
)
def test_subgroup_counts(g, count):
    assert len(g.subgroups) == count


def test_subgroup_order_is_canonical():
    for g in SMALL.values():
        keys = [s.sort_key() for s in g.subgroups]
        assert keys == sorted(keys)
        assert g.subgroups[0].order == 1 and g.subgroups[-1].order == g.order


@pytest.mark.parametrize("name", sorted(SMALL))
def test_double_cosets_match_brute_force(name):
    g = SMALL[name]
    for q, r in itertools.product(g.subgroups, repeat=2):
        brute = brute_double_cosets(q, r)
        n, reps = double_cosets(q, r)
        assert n == len(brute) == len(reps)
        assert sorted(double_coset_sizes(q, r)) == sorted(len(d) for d in brute)
        assert sum(double_coset_sizes(q, r)) == g.order


def test_left_cosets_partition():
    g = symmetric(3)
    for q in g.subgroups:
        dec = left_cosets(q)
        assert dec.count * q.order == g.order
        members = [set(dec.members(c)) for c in range(dec.count)]
        assert set().union(*members) == set(range(g.order))
        for x, c in itertools.product(range(g.order), range(dec.count)):
            assert set(dec.members(dec.translate(x, c))) == {g.mul(x, y) for y in dec.members(c)}


def test_orbit_stabilizers():
    g = symmetric(3)
    p = sylow_subgroup(g, 2)
    for q in g.subgroups:
        obs = orbits(p, q)
        assert sum(p.order // o.stabilizer.order for o in obs) == g.order // q.order


@pytest.mark.parametrize("p, order", [(2, 2), (3, 3), (5, 1)])
def test_sylow_in_s3(p, order):
    s = sylow_subgroup(symmetric(3), p)
    assert s.order == order
    if p == 3:
        assert s.elements == (0, 3, 4)


def test_dihedral_takes_group_order():
    assert dihedral(4).order == 4 and dihedral(4).is_abelian()
    assert dihedral(10).order == 10 and not dihedral(10).is_abelian()


def test_direct_product_orders():
    g = direct_product(cyclic(2), cyclic(3))
    assert g.order == 6 and g.is_abelian()
    assert any(g.element_order(x) == 6 for x in range(6))


def test_p_group_predicate():
    assert quaternion8().is_p_group(2)
    assert not symmetric(3).is_p_group(2)
    assert cyclic(9).is_p_group(3)


def test_cayley_table_validation():
    with pytest.raises(GroupError):
        FiniteGroup(np.array([[0, 1], [1, 1]]), [1])
    with pytest.raises(GroupError):
        FiniteGroup(np.array([[0, 1], [1, 0]]), [])


def test_order_bound():
    with pytest.raises(OrderBoundError):
        symmetric(5)
    with pytest.raises(OrderBoundError):
        cyclic(70)


def test_permutation_parse_and_format():
    gens, degree = parse_permutations("(1 2 3)(4 5), (1 2)")
    assert degree == 5
    assert [format_permutation(x) for x in gens] == ["(1 2 3)(4 5)", "(1 2)"]
    assert parse_permutations("()")[0][0] == tuple(range(parse_permutations("()")[1]))
    for bad in ["(1 2", "(1 1)", "(0 1)", "(a b)"]:
        with pytest.raises(GroupError):
            parse_permutations(bad)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.permutations(list(range(4))), min_size=1, max_size=2))
def test_permutation_groups_satisfy_lagrange(perms):
    text = ", ".join(format_permutation(tuple(p)) for p in perms)
    g = permutation_group(text)
    assert 24 % g.order == 0
    for s in g.subgroups:
        assert g.order % s.order == 0


def test_block_helpers():
    s3 = symmetric(3)
    assert p_core(s3, 3).order == 3 and p_core(s3, 2).order == 1
    assert centralizer(p_core(s3, 3)) == p_core(s3, 3)
    assert is_solvable(s3) and is_solvable(dihedral(10))
    assert single_block_certified(s3, 3) and single_block_certified(dihedral(10), 5)
    assert not single_block_certified(s3, 2)
    assert not single_block_certified(cyclic(6), 3)
    assert single_block_certified(cyclic(4), 2)
