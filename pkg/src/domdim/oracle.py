"""Brute-force dominant dimension of tiny algebras.

This path uses nothing from the group or representation layers, only the
structure constants and GF(p) elimination.  It follows the definition: build
the minimal injective coresolution of the regular right module and report how
many leading terms are projective.

* Primitive idempotents are found by scanning all ``2^dim`` elements.
* The radical is the set of ``x`` with ``1 - y x`` a unit for every ``y``.
* Indecomposable injectives are ``D(Ae)``; a map ``M -> D(Ae)`` is
  ``m |-> (x |-> lam(m x))`` for a functional ``lam`` on ``M``.
* The hull picks such maps greedily, keeping one only when it shrinks the
  kernel on the socle, so the result is minimal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ddim import AtLeast, DdimValue, Exact, Infinite
from .endo import StructureConstantAlgebra
from .gfp import PrimeField, Subspace
from .groups import FiniteGroup

MAX_DIM = 6
DEPTH = 3
# exhaustive isomorphism search up to this Hom dimension, then seeded sampling
_EXHAUSTIVE_HOM = 14


class OracleError(ValueError):
    pass


def group_algebra(g: FiniteGroup, fld: PrimeField) -> StructureConstantAlgebra:
    """``kG`` on the basis of group elements."""
    n = g.order
    idx = [(i, j, g.mul(i, j)) for i in range(n) for j in range(n)]
    unit = np.zeros(n, dtype=np.int64)
    unit[g.identity] = 1
    return StructureConstantAlgebra(fld, n, idx, np.ones(n * n), unit, labels=g.labels)


@dataclass
class _Module:
    """Right module: ``act[j] @ x = x . e_j``."""

    act: np.ndarray  # (dim A, d, d)

    @property
    def degree(self) -> int:
        return self.act.shape[1]

    def of(self, a) -> np.ndarray:
        return np.einsum("j,jkl->kl", a, self.act)


class _Oracle:
    def __init__(self, a: StructureConstantAlgebra):
        if a.field.p != 2 or a.dim > MAX_DIM:
            raise OracleError(f"oracle needs p = 2 and dim <= {MAX_DIM}")
        self.a = a
        self.fld = a.field
        self.n = a.dim
        self.elements = np.array(list(itertools.product((0, 1), repeat=self.n)), dtype=np.int64)
        self.left = a.left_mult_matrices()
        self.regular = _Module(a.right_mult_matrices())
        self.radical = self._radical()
        self.idempotents = self._primitive_idempotents()
        self.projectives = [self._sub_of_regular(self._left(e)) for e in self.idempotents]
        self.injectives = [self._dual_left_ideal(e) for e in self.idempotents]

    # -- algebra level --------------------------------------------------------

    def _left(self, x) -> np.ndarray:
        return np.einsum("i,ikl->kl", x, self.left) % 2

    def _is_unit(self, x) -> bool:
        return self.fld.is_invertible(self._left(x))

    def _radical(self) -> Subspace:
        one = self.a.unit
        rad = [x for x in self.elements if all(self._is_unit((one - self.a.mul(y, x)) % 2) for y in self.elements)]
        return Subspace.span(self.fld, np.array(rad), self.n)

    def _primitive_idempotents(self) -> list[np.ndarray]:
        idem = [x for x in self.elements if np.array_equal(self.a.mul(x, x), x)]

        def split(e):
            for f in idem:
                if f.any() and not np.array_equal(f, e):
                    if np.array_equal(self.a.mul(e, f), f) and np.array_equal(self.a.mul(f, e), f):
                        return split(f) + split((e - f) % 2)
            return [e]

        return split(self.a.unit % 2)

    def _sub_of_regular(self, image_of: np.ndarray) -> _Module:
        """``eA`` as the column space of left multiplication by ``e``."""
        sub = self.fld.image_basis(image_of)
        b = sub.basis.T
        act = np.array([self.fld.solve(b, (r @ b) % 2) for r in self.regular.act])
        return _Module(act)

    def _dual_left_ideal(self, e) -> _Module:
        """``D(Ae)`` with ``(phi . a)(x) = phi(a x)``."""
        right_e = self.regular.of(e) % 2
        sub = self.fld.image_basis(right_e)
        b = sub.basis.T
        act = np.array([self.fld.solve(b, (l @ b) % 2).T for l in self.left])
        return _Module(act)

    # -- module level ---------------------------------------------------------

    def socle(self, m: _Module) -> Subspace:
        if not self.radical.dim:
            return Subspace.full(self.fld, m.degree)
        stack = np.vstack([m.of(r) % 2 for r in self.radical.basis])
        return self.fld.kernel_basis(stack)

    def _map_to_injective(self, m: _Module, i: int, lam: np.ndarray) -> np.ndarray:
        e = self.idempotents[i]
        b = self.fld.image_basis(self.regular.of(e) % 2).basis
        # row s of the map: lam applied to m . b_s
        return np.array([(lam @ m.of(bs)) % 2 for bs in b]).reshape(len(b), m.degree)

    def injective_hull(self, m: _Module) -> tuple[list[int], np.ndarray]:
        """Indices of the summands ``D(Ae_i)`` and the embedding matrix."""
        soc = self.socle(m)
        kernel = soc
        chosen, rows = [], []
        while kernel.dim:
            for i, t in itertools.product(range(len(self.idempotents)), range(m.degree)):
                lam = np.zeros(m.degree, dtype=np.int64)
                lam[t] = 1
                f = self._map_to_injective(m, i, lam)
                new = kernel & self.fld.kernel_basis(f)
                if new.dim < kernel.dim:
                    chosen.append(i)
                    rows.append(f)
                    kernel = new
                    break
            else:
                raise OracleError("socle is not covered by the indecomposable injectives")
        emb = np.vstack(rows) if rows else np.zeros((0, m.degree), dtype=np.int64)
        if self.fld.rank(emb) != m.degree:
            raise OracleError("hull map is not injective")
        hull = self.direct_sum(chosen)
        if any(((emb @ m.act[j] - hull.act[j] @ emb) % 2).any() for j in range(self.n)):
            raise OracleError("hull map is not a module map")
        return chosen, emb

    def direct_sum(self, parts: list[int]) -> _Module:
        mods = [self.injectives[i] for i in parts]
        d = sum(x.degree for x in mods)
        act = np.zeros((self.n, d, d), dtype=np.int64)
        o = 0
        for x in mods:
            act[:, o : o + x.degree, o : o + x.degree] = x.act
            o += x.degree
        return _Module(act)

    def quotient(self, m: _Module, image: Subspace) -> _Module:
        keep = image.complement_coordinates()
        act = np.zeros((self.n, len(keep), len(keep)), dtype=np.int64)
        for j in range(self.n):
            cols = m.act[j][:, keep] % 2
            red = image.reduce(cols.T)
            act[j] = red[:, keep].T
        return _Module(act)

    def isomorphic(self, x: _Module, y: _Module) -> bool:
        if x.degree != y.degree:
            return False
        d = x.degree
        if d == 0:
            return True
        eye = np.eye(d, dtype=np.int64)
        # vec(X x_j - y_j X) with X acting y <- x, row-major
        eqs = np.vstack([(np.kron(eye, x.act[j].T) - np.kron(y.act[j], eye)) % 2 for j in range(self.n)])
        homs = self.fld.kernel_basis(eqs).basis
        h = len(homs)
        if h <= _EXHAUSTIVE_HOM:
            combos = itertools.product((0, 1), repeat=h)
        else:
            rng = np.random.default_rng(0)
            combos = (rng.integers(0, 2, h) for _ in range(1 << _EXHAUSTIVE_HOM))
        for c in combos:
            if self.fld.is_invertible((np.asarray(c) @ homs % 2).reshape(d, d)):
                return True
        return False

    def injective_is_projective(self, i: int) -> bool:
        return any(self.isomorphic(self.injectives[i], q) for q in self.projectives)

    def ddim(self, depth: int = DEPTH) -> DdimValue:
        m = self.regular
        for n in range(depth):
            if m.degree == 0:
                return Infinite
            parts, emb = self.injective_hull(m)
            if not all(self.injective_is_projective(i) for i in parts):
                return Exact(n)
            hull = self.direct_sum(parts)
            m = self.quotient(hull, self.fld.image_basis(emb))
        return Infinite if m.degree == 0 else AtLeast(depth)


def brute_ddim_small(a: StructureConstantAlgebra, depth: int = DEPTH) -> DdimValue:
    """Dominant dimension of ``a`` from its minimal injective coresolution.

    Only for ``p = 2`` and ``dim a <= 6``; the answer is capped at
    ``AtLeast(depth)`` when the first ``depth`` terms are all projective.
    """
    return _Oracle(a).ddim(depth)
