"""Endomorphism algebras of sums of permutation modules.

``build_V`` forms ``V = (+)_{Q <= P} k[P/Q]`` over all subgroups in canonical
order and ``end_algebra`` realizes ``End_kP(V)`` as a structure-constant
algebra.

Conventions
-----------
* A basis element in block ``(Q, R)`` is a module map from summand ``Q``
  into summand ``R`` (a ``deg R x deg Q`` matrix placed in the full
  ``deg V`` square).
* ``a * b`` means "apply ``b``, then ``a``", i.e. the matrix product ``A @ B``.
  Hence ``e_R * b * e_Q = b`` for ``b`` in block ``(Q, R)``.
* ``End(V)`` acts on ``Hom(V, W)`` from the right by precomposition,
  ``f . a = f @ A``.

The categories in play are right modules over the endomorphism algebra.  Its
opposite algebra is never built: dominant dimension does not see the side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .gfp import PrimeField
from .groups import FiniteGroup, Subgroup
from .rep import HomSpace, Representation, direct_sum, perm_module

# dense associativity check for algebras up to this dimension
_DENSE_LIMIT = 40


class AlgebraError(ValueError):
    pass


class StructureConstantAlgebra:
    """A finite-dimensional associative unital algebra by structure constants.

    ``e_i * e_j = sum_k c[i, j, k] e_k``; the nonzero constants are kept as
    index triples ``idx`` (shape ``(nnz, 3)``) with values ``val``.
    Associativity and the unit are verified densely at construction when
    ``dim <= 40``; larger algebras are checked with :func:`validate_algebra`.
    """

    def __init__(self, fld: PrimeField, dim: int, idx, val, unit, labels=None, check: bool = True):
        self.field = fld
        self.dim = int(dim)
        idx = np.asarray(idx, dtype=np.int64).reshape(-1, 3)
        val = fld.asarray(val).reshape(-1)
        keep = val != 0
        idx, val = idx[keep], val[keep]
        order = np.lexsort((idx[:, 2], idx[:, 1], idx[:, 0]))
        self.idx, self.val = idx[order], val[order]
        if len(self.idx) and (self.idx.min() < 0 or self.idx.max() >= self.dim):
            raise AlgebraError("structure constant index out of range")
        self.unit = fld.asarray(unit)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(self.dim))
        if check and self.dim <= _DENSE_LIMIT:
            bad = _dense_checks(self)
            if bad is not None:
                raise AlgebraError(f"not an associative unital algebra: {bad}")

    @classmethod
    def from_dense(cls, fld: PrimeField, table, unit, labels=None, check=True):
        t = fld.asarray(table)
        nz = np.argwhere(t)
        return cls(fld, t.shape[0], nz, t[tuple(nz.T)], unit, labels, check)

    def __repr__(self):
        return f"StructureConstantAlgebra(dim={self.dim}, {self.field!r}, nnz={len(self.val)})"

    def dense(self) -> np.ndarray:
        n = self.dim
        t = np.zeros((n, n, n), dtype=np.int64)
        t[tuple(self.idx.T)] = self.val
        return t

    def mul(self, x, y) -> np.ndarray:
        x, y = self.field.asarray(x), self.field.asarray(y)
        i, j, k = self.idx.T
        w = x[i] * y[j] * self.val
        return np.bincount(k, weights=w % self.field.p, minlength=self.dim).astype(np.int64) % self.field.p

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def right_mult_matrices(self) -> np.ndarray:
        """``R[j]`` with ``R[j] @ x = x * e_j`` (column convention)."""
        n = self.dim
        r = np.zeros((n, n, n), dtype=np.int64)
        i, j, k = self.idx.T
        r[j, k, i] = self.val
        return r

    def left_mult_matrices(self) -> np.ndarray:
        """``L[i] @ x = e_i * x``."""
        n = self.dim
        l = np.zeros((n, n, n), dtype=np.int64)
        i, j, k = self.idx.T
        l[i, k, j] = self.val
        return l


def _dense_checks(a: StructureConstantAlgebra):
    """First violated axiom as a string, or ``None``."""
    p = a.field.p
    t = a.dense()
    left = np.einsum("ijl,lkm->ijkm", t, t) % p
    right = np.einsum("jkl,ilm->ijkm", t, t) % p
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k, _ = bad[0]
        return f"associativity fails at basis triple ({i}, {j}, {k})"
    eye = np.eye(a.dim, dtype=np.int64)
    ul = np.einsum("i,ijk->jk", a.unit, t) % p
    ur = np.einsum("j,ijk->ik", a.unit, t) % p
    if not np.array_equal(ul, eye) or not np.array_equal(ur, eye):
        return "unit is not a two-sided identity"
    return None


@dataclass
class PeirceData:
    """Orthogonal idempotents ``e_Q`` and the block ``(Q, R)`` of each basis element."""

    idempotents: np.ndarray  # (number of summands, dim)
    block_of: list[tuple[int, int]]
    block_ranges: dict[tuple[int, int], tuple[int, int]]


@dataclass
class EndAlgebra:
    """``End(V)`` with its Peirce data and the matrices behind the basis."""

    algebra: StructureConstantAlgebra
    peirce: PeirceData
    module: Representation
    homspace: HomSpace

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def matrices(self) -> np.ndarray:
        return self.homspace.matrices()

    def block_dims(self) -> dict[tuple[int, int], int]:
        return {k: b - a for k, (a, b) in self.peirce.block_ranges.items()}


# -- construction -----------------------------------------------------------


def subgroups_of(sub: Subgroup) -> list[Subgroup]:
    """Subgroups of the parent group contained in ``sub``, canonical order."""
    return [s for s in sub.parent.subgroups if s <= sub]


def build_V(g: FiniteGroup, fld: PrimeField) -> Representation:
    """``(+)_{Q <= G} k[G/Q]`` over all subgroups of ``g``."""
    return direct_sum([perm_module(g, q, fld) for q in g.subgroups])


def build_U(g: FiniteGroup, p_sub: Subgroup, fld: PrimeField) -> Representation:
    """``(+)_{Q <= P} k[G/Q]`` for ``Q`` running over the subgroups of ``p_sub``."""
    return direct_sum([perm_module(g, q, fld) for q in subgroups_of(p_sub)])


def end_algebra(v: Representation, validate: bool = True) -> EndAlgebra:
    """``End_kG(v)`` from the component-wise Hom bases.

    Products are computed by composing the block matrices and read back in
    the target block's RREF basis.
    """
    if not v.components:
        raise AlgebraError("end_algebra needs a module with component tags")
    fld, p = v.field, v.field.p
    hs = HomSpace(v, v)
    ncomp = len(v.components)
    ranges: dict[tuple[int, int], tuple[int, int]] = {}
    subs = {}
    block_of: list[tuple[int, int]] = []
    labels = []
    for bi, (so, sd, to, td, sub, start) in enumerate(hs.blocks):
        q, r = divmod(bi, ncomp)
        ranges[(q, r)] = (start, start + sub.dim)
        subs[(q, r)] = (sub, td, sd)
        block_of.extend([(q, r)] * sub.dim)
        lq, lr = v.components[q].label, v.components[r].label
        labels.extend(f"{lq}->{lr}#{t}" for t in range(sub.dim))
    n = hs.dim

    idx_parts, val_parts = [], []
    for (q, r), (a0, a1) in ranges.items():
        if a0 == a1:
            continue
        sub_b, dr, dq = subs[(q, r)]
        bmats = sub_b.basis.reshape(sub_b.dim, dr, dq)
        for s in range(ncomp):
            c0, c1 = ranges[(r, s)]
            if c0 == c1:
                continue
            sub_a, ds, _ = subs[(r, s)]
            amats = sub_a.basis.reshape(sub_a.dim, ds, dr)
            prod = np.einsum("aij,bjk->abik", amats, bmats) % p
            tgt, _, _ = subs[(q, s)]
            t0, _ = ranges[(q, s)]
            flat = prod.reshape(-1, ds * dq)
            coords = tgt.coordinates(flat) if tgt.dim else (None if flat.any() else np.zeros((len(flat), 0), dtype=np.int64))
            if coords is None:
                raise AlgebraError("a product left the Hom space (internal consistency error)")
            coords = coords.reshape(c1 - c0, a1 - a0, -1)
            ai, bi, ki = np.nonzero(coords)
            if len(ai):
                idx_parts.append(np.stack([ai + c0, bi + a0, ki + t0], axis=1))
                val_parts.append(coords[ai, bi, ki])
    idx = np.concatenate(idx_parts) if idx_parts else np.zeros((0, 3), dtype=np.int64)
    val = np.concatenate(val_parts) if val_parts else np.zeros(0, dtype=np.int64)

    idem = np.zeros((ncomp, n), dtype=np.int64)
    for q, c in enumerate(v.components):
        proj = np.zeros((v.degree, v.degree), dtype=np.int64)
        proj[c.offset : c.offset + c.degree, c.offset : c.offset + c.degree] = np.eye(c.degree, dtype=np.int64)
        idem[q] = hs.coordinates(proj)
    unit = hs.coordinates(np.eye(v.degree, dtype=np.int64))
    alg = StructureConstantAlgebra(fld, n, idx, val, unit, labels, check=False)
    out = EndAlgebra(alg, PeirceData(idem, block_of, ranges), v, hs)
    if validate:
        rep = validate_algebra(alg, out.peirce)
        if not rep.ok:
            raise AlgebraError(f"constructed algebra failed validation: {rep.failures}")
    return out


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    witness: tuple | None = None


def validate_algebra(a: StructureConstantAlgebra, peirce: PeirceData | None = None) -> ValidationReport:
    """Associativity, unit, idempotents and block compatibility; failures are data.

    With Peirce data the zero pattern of the constants is checked first
    (products of non-composable blocks vanish and composable products land in
    the right block); given that pattern, associativity on every basis triple
    reduces to the composable block chains, which are checked exhaustively.
    """
    rep = ValidationReport(ok=True)
    p = a.field.p

    def fail(name, msg, witness=None):
        rep.checks[name] = False
        rep.failures.append(msg)
        if rep.witness is None and witness is not None:
            rep.witness = tuple(int(x) for x in witness)

    if peirce is None or a.dim <= _DENSE_LIMIT:
        bad = _first_dense_associativity_failure(a)
        if bad is not None:
            fail("associativity", f"(e{bad[0]} e{bad[1]}) e{bad[2]} != e{bad[0]} (e{bad[1]} e{bad[2]})", bad)
    if peirce is not None:
        bad = _block_pattern_failure(a, peirce)
        if bad is not None:
            fail("block_pattern", f"product e{bad[0]} e{bad[1]} has a constant outside its block", bad)
        elif a.dim > _DENSE_LIMIT:
            bad = _blockwise_associativity_failure(a, peirce)
            if bad is not None:
                fail("associativity", f"(e{bad[0]} e{bad[1]}) e{bad[2]} != e{bad[0]} (e{bad[1]} e{bad[2]})", bad)
    rep.checks.setdefault("associativity", True)

    for j in range(a.dim):
        e = a.basis_vector(j)
        if not (np.array_equal(a.mul(a.unit, e), e) and np.array_equal(a.mul(e, a.unit), e)):
            fail("unit", f"unit does not fix basis element {j}", (j,))
            break
    rep.checks.setdefault("unit", True)

    if peirce is not None:
        idem = peirce.idempotents
        if not np.array_equal(idem.sum(axis=0) % p, a.unit):
            fail("idempotent_sum", "idempotents do not sum to the unit")
        rep.checks.setdefault("idempotent_sum", True)
        for q in range(len(idem)):
            for r in range(len(idem)):
                prod = a.mul(idem[q], idem[r])
                want = idem[q] if q == r else np.zeros(a.dim, dtype=np.int64)
                if not np.array_equal(prod, want):
                    fail("orthogonality", f"e_{q} e_{r} has the wrong value", (q, r))
        rep.checks.setdefault("orthogonality", True)
        for b, (q, r) in enumerate(peirce.block_of):
            e = a.basis_vector(b)
            if not np.array_equal(a.mul(a.mul(idem[r], e), idem[q]), e):
                fail("block_compatibility", f"e_R b e_Q != b for basis element {b}", (b,))
                break
        rep.checks.setdefault("block_compatibility", True)
    rep.ok = not rep.failures
    return rep


def _first_dense_associativity_failure(a):
    if a.dim > 120:
        raise AlgebraError("dense associativity check needs Peirce data above dimension 120")
    t = a.dense()
    p = a.field.p
    for i in range(a.dim):
        left = np.einsum("jl,lkm->jkm", t[i], t) % p  # (e_i e_j) e_k
        right = np.einsum("jkl,lm->jkm", t, t[i]) % p  # e_i (e_j e_k)
        bad = np.argwhere(left != right)
        if len(bad):
            return (i, int(bad[0][0]), int(bad[0][1]))
    return None


def _block_pattern_failure(a, peirce):
    blk = np.asarray(peirce.block_of, dtype=np.int64).reshape(-1, 2)
    if not len(a.idx):
        return None
    i, j, k = a.idx.T
    src_i, tgt_i = blk[i, 0], blk[i, 1]
    src_j, tgt_j = blk[j, 0], blk[j, 1]
    ok = (tgt_j == src_i) & (blk[k, 0] == src_j) & (blk[k, 1] == tgt_i)
    bad = np.flatnonzero(~ok)
    if len(bad):
        return tuple(int(x) for x in a.idx[bad[0]][:2])
    return None


def _blockwise_associativity_failure(a, peirce):
    """Exhaustive over composable chains ``Q -> R -> S -> T`` of Peirce blocks."""
    p = a.field.p
    ranges = peirce.block_ranges
    ncomp = len(peirce.idempotents)
    # dense product tensors per composable block pair: (R->S) x (Q->R) -> (Q->S)
    t = {}
    blk = np.asarray(peirce.block_of, dtype=np.int64).reshape(-1, 2)
    i, j, k = a.idx.T
    keys = blk[i, 0] * ncomp * ncomp + blk[i, 1] * ncomp + blk[j, 0]  # (R, S, Q)
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    bounds = np.flatnonzero(np.diff(sk)) + 1
    for grp in np.split(order, bounds) if len(order) else []:
        r, s, q = np.unravel_index(keys[grp[0]], (ncomp, ncomp, ncomp))
        a0, _ = ranges[(r, s)]
        b0, _ = ranges[(q, r)]
        c0, _ = ranges[(q, s)]
        arr = np.zeros((_w(ranges, r, s), _w(ranges, q, r), _w(ranges, q, s)), dtype=np.int64)
        arr[i[grp] - a0, j[grp] - b0, k[grp] - c0] = a.val[grp]
        t[(int(q), int(r), int(s))] = arr

    def get(q, r, s):
        x = t.get((q, r, s))
        if x is None:
            x = np.zeros((_w(ranges, r, s), _w(ranges, q, r), _w(ranges, q, s)), dtype=np.int64)
        return x

    for q in range(ncomp):
        for r in range(ncomp):
            if not _w(ranges, q, r):
                continue
            for s in range(ncomp):
                if not _w(ranges, r, s):
                    continue
                ab = get(q, r, s)  # e_j(R->S) e_k(Q->R)
                for u in range(ncomp):
                    if not _w(ranges, s, u):
                        continue
                    # (e_i e_j) e_k with e_i in S->U, e_j in R->S, e_k in Q->R
                    left = np.einsum("ijl,lkm->ijkm", get(r, s, u), get(q, r, u)) % p
                    right = np.einsum("jkl,ilm->ijkm", ab, get(q, s, u)) % p
                    bad = np.argwhere(left != right)
                    if len(bad):
                        ii, jj, kk, _ = bad[0]
                        return (
                            int(ii + ranges[(s, u)][0]),
                            int(jj + ranges[(r, s)][0]),
                            int(kk + ranges[(q, r)][0]),
                        )
    return None


def _w(ranges, q, r):
    a0, a1 = ranges[(q, r)]
    return a1 - a0


# -- Hom(V, W) as a right End(V)-module ------------------------------------------


@dataclass
class RightModule:
    """Right action of ``End(v)`` on ``Hom(v, w)``; ``action[b] @ x = x . e_b``."""

    end: EndAlgebra
    homspace: HomSpace
    action: np.ndarray  # (dim End, dim Hom, dim Hom)

    @property
    def dim(self) -> int:
        return self.homspace.dim


def hom_as_right_module(end: EndAlgebra, w: Representation) -> RightModule:
    """``Hom(V, w)`` with ``End(V)`` acting by precomposition."""
    v = end.module
    hs = HomSpace(v, w)
    fmats = hs.matrices()  # (h, dw, dv)
    emats = end.matrices()  # (n, dv, dv)
    h, n = hs.dim, end.dim
    act = np.zeros((n, h, h), dtype=np.int64)
    if h and n:
        prod = np.einsum("aij,bjk->baik", fmats, emats) % v.field.p  # f_a @ E_b
        coords = hs.coordinates(prod.reshape(n * h, w.degree, v.degree)).reshape(n, h, h)
        act = np.transpose(coords, (0, 2, 1)).copy()  # column a = coords of f_a . e_b
    return RightModule(end, hs, act)


def induced_map(src: RightModule, dst: RightModule, phi) -> np.ndarray:
    """Matrix of ``Hom(v, w) -> Hom(v, w')``, ``f -> phi @ f``, in the two bases."""
    phi = src.end.module.field.asarray(phi)
    fmats = src.homspace.matrices()
    if not len(fmats):
        return np.zeros((dst.dim, 0), dtype=np.int64)
    img = np.einsum("ij,ajk->aik", phi, fmats) % src.end.module.field.p
    return dst.homspace.coordinates(img).T


# -- dump format ------------------------------------------------------------------


def dump_structure_constants(a: StructureConstantAlgebra) -> dict:
    """JSON-ready ``{field, dim, labels, unit, constants: [[i, j, k, value], ...]}``."""
    return {
        "field": a.field.p,
        "dim": a.dim,
        "labels": list(a.labels),
        "unit": [int(x) for x in a.unit],
        "constants": [[int(i), int(j), int(k), int(v)] for (i, j, k), v in zip(a.idx, a.val)],
    }


def load_structure_constants(data) -> StructureConstantAlgebra:
    if isinstance(data, str):
        data = json.loads(data)
    fld = PrimeField(int(data["field"]))
    c = np.asarray(data["constants"], dtype=np.int64).reshape(-1, 4)
    return StructureConstantAlgebra(fld, int(data["dim"]), c[:, :3], c[:, 3], data["unit"], data.get("labels"))
