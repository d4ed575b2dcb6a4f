import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domdim.gfp import PrimeField, Subspace, is_prime


def brute_rank(m, p):
    """log_p of the number of distinct images; independent of elimination."""
    m = np.asarray(m) % p
    cols = m.shape[1]
    images = {tuple((m @ np.array(v)) % p) for v in itertools.product(range(p), repeat=cols)}
    n, r = len(images), 0
    while n > 1:
        n //= p
        r += 1
    return r


@st.composite
def small_matrix(draw, p=None, max_rows=4, max_cols=4):
    p = p or draw(st.sampled_from([2, 3, 5]))
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return p, np.array(entries, dtype=np.int64).reshape(rows, cols)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 2**20 + 7])
def test_field_rejects_non_primes_and_huge_moduli(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_kron_follows_numpy_layout():
    f = PrimeField(3)
    assert f.kron([[1, 1]], [[1], [2]]).tolist() == [[1, 1], [2, 2]]
    assert f.kron([[1, 1]], [[1, 2]]).tolist() == [[1, 2, 1, 2]]


def test_vec_identities():
    f = PrimeField(5)
    rng = np.random.default_rng(1)
    x, a, b = rng.integers(0, 5, (3, 4)), rng.integers(0, 5, (4, 4)), rng.integers(0, 5, (3, 3))
    assert np.array_equal(f.matmul(x, a).ravel(), f.matmul(f.kron(np.eye(3), a.T), x.ravel()))
    assert np.array_equal(f.matmul(b, x).ravel(), f.matmul(f.kron(b, np.eye(4)), x.ravel()))


@settings(max_examples=80, deadline=None)
@given(small_matrix())
def test_rank_matches_image_count(pm):
    p, m = pm
    assert PrimeField(p).rank(m) == brute_rank(m, p)


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rank_nullity_and_kernel(pm):
    p, m = pm
    f = PrimeField(p)
    k = f.kernel_basis(m)
    assert f.rank(m) + k.dim == m.shape[1]
    assert not (f.matmul(m, k.basis.T)).any()


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rref_is_idempotent_and_reduced(pm):
    p, m = pm
    f = PrimeField(p)
    r, rank, piv = f.rref(m)
    assert np.array_equal(f.rref(r)[0], r)
    for i, c in enumerate(piv):
        col = np.zeros(m.shape[0], dtype=np.int64)
        col[i] = 1
        assert np.array_equal(r[:, c], col)
    assert not r[rank:].any()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(40, 90), st.integers(40, 90))
def test_packed_gf2_path_agrees_with_dense(seed, rows, cols):
    f = PrimeField(2)
    m = np.random.default_rng(seed).integers(0, 2, (rows, cols))
    r1, k1, p1 = f.rref(m)  # sizes straddle the packed-path threshold
    r2, k2, p2 = f._rref_dense(m)
    assert (k1, p1) == (k2, p2)
    assert np.array_equal(r1, r2)


def test_packed_path_on_large_matrix():
    f = PrimeField(2)
    m = np.random.default_rng(7).integers(0, 2, (80, 90))
    assert m.size >= 4096
    r1, k1, _ = f.rref(m)
    r2, k2, _ = f._rref_dense(m)
    assert k1 == k2 and np.array_equal(r1, r2)


@settings(max_examples=60, deadline=None)
@given(small_matrix(max_rows=4, max_cols=4), st.integers(0, 10**6))
def test_solve_consistent_or_none(pm, seed):
    p, a = pm
    f = PrimeField(p)
    rng = np.random.default_rng(seed)
    x0 = rng.integers(0, p, a.shape[1])
    b = f.matmul(a, x0)
    x = f.solve(a, b)
    assert x is not None and np.array_equal(f.matmul(a, x), b)
    b2 = rng.integers(0, p, a.shape[0])
    y = f.solve(a, b2)
    in_image = f.rank(np.hstack([a, b2[:, None]])) == f.rank(a)
    assert (y is not None) == in_image


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        PrimeField(3).solve(np.eye(3), np.ones(2))


def test_inverse():
    f = PrimeField(7)
    a = np.array([[2, 1], [5, 3]])
    assert np.array_equal(f.matmul(a, f.inv(a)), np.eye(2))
    with pytest.raises(np.linalg.LinAlgError):
        f.inv([[1, 2], [2, 4]])
    assert f.inv_scalar(3) == 5
    with pytest.raises(ZeroDivisionError):
        f.inv_scalar(0)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_subspace_lattice_laws(p, seed):
    f = PrimeField(p)
    rng = np.random.default_rng(seed)
    n = 4
    u = Subspace.span(f, rng.integers(0, p, (rng.integers(0, 4), n)), n)
    w = Subspace.span(f, rng.integers(0, p, (rng.integers(0, 4), n)), n)
    assert (u + w).dim + (u & w).dim == u.dim + w.dim
    assert u & w == w & u
    assert u + w == w + u
    for v in (u & w).basis:
        assert v in u and v in w
    for v in u.basis:
        assert v in u + w


def test_subspace_coordinates_and_reduce():
    f = PrimeField(3)
    s = Subspace.span(f, [[1, 2, 0], [0, 1, 1]])
    v = f.asarray(2 * np.array([1, 2, 0]) + np.array([0, 1, 1]))
    c = s.coordinates(v)
    assert np.array_equal(f.matmul(c, s.basis), v)
    assert s.coordinates([0, 0, 1]) is None
    assert not s.reduce(v).any()
    assert s.reduce([0, 0, 1]).any()
    assert len(s.complement_coordinates()) == 1


def test_subspace_ambient_mismatch():
    f = PrimeField(2)
    with pytest.raises(ValueError):
        Subspace.full(f, 2) + Subspace.full(f, 3)
