"""Exact dense linear algebra over prime fields GF(p).

Matrices are plain ``numpy`` integer arrays whose entries are residues in
``[0, p)``; the field travels alongside as a :class:`PrimeField`.  All
routines are pure and return fresh arrays.

Index conventions
-----------------
* Vectors are 1-D arrays; a linear map acts on column vectors, so a map
  ``GF(p)^m -> GF(p)^n`` is an ``n x m`` array.
* :meth:`PrimeField.kron` follows ``numpy.kron``: row-major and
  left-factor-major, ``kron(a, b)[i*br + k, j*bc + l] = a[i, j] * b[k, l]``.
  Row-major flattening then satisfies
  ``vec(x @ a) = kron(I, a.T) @ vec(x)`` and ``vec(b @ x) = kron(b, I) @ vec(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Below this many entries the bit-packed GF(2) path is not worth the packing.
_PACK_THRESHOLD = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p)."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"GF(p) needs a prime modulus, got {self.p!r}")
        # p*p*n must stay far below 2**63 for eager int64 reduction.
        if self.p >= 2**20:
            raise ValueError("modulus too large for word-sized arithmetic")
        object.__setattr__(self, "p", int(self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @cached_property
    def _inverses(self) -> np.ndarray:
        inv = np.zeros(self.p, dtype=np.int64)
        for a in range(1, self.p):
            inv[a] = pow(a, -1, self.p)
        return inv

    # -- construction -----------------------------------------------------

    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv_scalar(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return int(self._inverses[a])

    # -- arithmetic -------------------------------------------------------

    def matmul(self, a, b) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % self.p

    def kron(self, a, b) -> np.ndarray:
        return np.kron(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % self.p

    # -- elimination ------------------------------------------------------

    def rref(self, m) -> tuple[np.ndarray, int, list[int]]:
        """Reduced row-echelon form of ``m``.

        Returns ``(r, rank, pivots)``; ``r`` has the shape of ``m`` with the
        nonzero rows first.  Pivoting takes the first nonzero entry in each
        column, so the result is deterministic (and unique anyway).
        """
        m = np.asarray(m)
        if m.ndim != 2:
            raise ValueError("rref expects a 2-D array")
        rows, cols = m.shape
        if rows == 0 or cols == 0:
            return np.zeros((rows, cols), dtype=np.int64), 0, []
        if self.p == 2 and rows * cols >= _PACK_THRESHOLD:
            return _rref_gf2_packed(m)
        return self._rref_dense(m)

    def _rref_dense(self, m):
        p = self.p
        r = np.array(m, dtype=np.int64) % p
        rows, cols = r.shape
        inv = self._inverses
        pivots: list[int] = []
        row = 0
        for c in range(cols):
            nz = np.flatnonzero(r[row:, c])
            if nz.size == 0:
                continue
            i = row + int(nz[0])
            if i != row:
                r[[row, i]] = r[[i, row]]
            lead = r[row, c]
            if lead != 1:
                r[row, c:] = (r[row, c:] * inv[lead]) % p
            f = r[:, c].copy()
            f[row] = 0
            hit = np.flatnonzero(f)
            if hit.size:
                r[hit, c:] = (r[hit, c:] - np.outer(f[hit], r[row, c:])) % p
            pivots.append(c)
            row += 1
            if row == rows:
                break
        return r, row, pivots

    def rank(self, m) -> int:
        return self.rref(m)[1]

    def kernel_basis(self, m) -> "Subspace":
        """Null space ``{v : m @ v = 0}`` as a :class:`Subspace`."""
        m = np.asarray(m)
        cols = m.shape[1]
        r, rank, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        if free:
            piv = np.asarray(pivots, dtype=np.int64)
            fr = np.asarray(free, dtype=np.int64)
            basis[np.arange(len(free)), fr] = 1
            if rank:
                basis[:, piv] = (-r[:rank][:, fr].T) % self.p
        return Subspace.span(self, basis, cols)

    def image_basis(self, m) -> "Subspace":
        """Column space of ``m``."""
        m = np.asarray(m)
        return Subspace.span(self, m.T, m.shape[0])

    def solve(self, a, b) -> np.ndarray | None:
        """Some ``x`` with ``a @ x = b``, or ``None`` if inconsistent.

        Free variables are set to zero, so the answer is a deterministic
        function of the inputs.
        """
        a = self.asarray(a)
        b = self.asarray(b)
        vector = b.ndim == 1
        if vector:
            b = b[:, None]
        if a.ndim != 2 or a.shape[0] != b.shape[0]:
            raise ValueError(f"solve: shape mismatch {a.shape} vs {b.shape}")
        n = a.shape[1]
        r, rank, pivots = self.rref(np.hstack([a, b]))
        if rank and pivots[-1] >= n:
            return None
        x = np.zeros((n, b.shape[1]), dtype=np.int64)
        if rank:
            x[pivots] = r[:rank, n:]
        return x[:, 0] if vector else x

    def inv(self, a) -> np.ndarray:
        a = self.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        r, rank, _ = self.rref(np.hstack([a, self.eye(n)]))
        if rank < n or not np.array_equal(r[:, :n], self.eye(n)):
            raise np.linalg.LinAlgError("matrix is singular over GF(%d)" % self.p)
        return r[:, n:]

    def is_invertible(self, a) -> bool:
        a = np.asarray(a)
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]


def _rref_gf2_packed(m):
    """Bit-packed GF(2) elimination; same contract as ``PrimeField.rref``."""
    rows, cols = m.shape
    bits = np.packbits((np.asarray(m) % 2).astype(np.uint8), axis=1)
    pivots: list[int] = []
    row = 0
    for c in range(cols):
        byte, shift = c >> 3, 7 - (c & 7)
        col = (bits[:, byte] >> shift) & 1
        nz = np.flatnonzero(col[row:])
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            bits[[row, i]] = bits[[i, row]]
            col[[row, i]] = col[[i, row]]
        col[row] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            bits[hit, byte:] ^= bits[row, byte:]
        pivots.append(c)
        row += 1
        if row == rows:
            break
    r = np.unpackbits(bits, axis=1, count=cols).astype(np.int64)
    return r, row, pivots


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``GF(p)^n`` stored by its RREF basis (one vector per row).

    The RREF matrix is canonical, so equality is an exact array comparison.
    """

    field: PrimeField
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = ()

    @classmethod
    def span(cls, fld: PrimeField, vectors, ambient_dim: int | None = None) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.ndim == 1:
            v = v[None, :]
        if ambient_dim is None:
            ambient_dim = v.shape[1]
        if v.size == 0:
            return cls(fld, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), ())
        if v.shape[1] != ambient_dim:
            raise ValueError("vectors do not live in the stated ambient space")
        r, rank, pivots = fld.rref(v)
        return cls(fld, ambient_dim, r[:rank].copy(), tuple(pivots))

    @classmethod
    def zero(cls, fld: PrimeField, n: int) -> "Subspace":
        return cls.span(fld, np.zeros((0, n), dtype=np.int64), n)

    @classmethod
    def full(cls, fld: PrimeField, n: int) -> "Subspace":
        return cls(fld, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows [u | u] and [w | 0]; the rows with zero left half
        # span the intersection in their right half.
        self._check(other)
        n = self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, n)
        top = np.hstack([self.basis, self.basis])
        bot = np.hstack([other.basis, np.zeros_like(other.basis)])
        r, rank, pivots = self.field.rref(np.vstack([top, bot]))
        rows = [i for i, c in enumerate(pivots) if c >= n]
        return Subspace.span(self.field, r[rows, n:], n)

    sum = __add__
    intersect = __and__

    def coordinates(self, v) -> np.ndarray | None:
        """Coordinates of ``v`` in the RREF basis, or ``None`` if ``v`` is outside."""
        v = self.field.asarray(v)
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64) if not v.any() else None
        c = v[..., list(self.pivots)]
        if not np.array_equal((c @ self.basis) % self.field.p, v):
            return None
        return c

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"

    def complement_coordinates(self) -> list[int]:
        """Non-pivot positions; the unit vectors there span a complement."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def reduce(self, v) -> np.ndarray:
        """Normal form of ``v`` (or of each row of a 2-D ``v``) modulo this subspace."""
        v = self.field.asarray(v)
        if self.dim == 0:
            return v
        c = v[..., list(self.pivots)]
        return (v - c @ self.basis) % self.field.p
