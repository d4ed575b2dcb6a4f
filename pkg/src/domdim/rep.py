"""Modules over group algebras kG, k = GF(p), as matrix representations.

A :class:`Representation` stores one action matrix per group generator and
derives the action of every element on demand from the group's shortest-word
table.  Matrices act on column vectors; ``action[s][:, j]`` is the image of
the ``j``-th basis vector under generator ``s``.

Direct sums remember their summands as :class:`Component` records.  Hom
spaces and Ext groups are additive in both arguments, so every computation
below splits along components when they are present; the assembled bases are
ordered source-component-major, then target-component.

Ext groups are computed from projective resolutions.  Over a p-group kP is
local and the minimal resolution (iterated projective covers) is available.
For any group the free resolution with terms ``kG (x) X -> X`` (free of rank
``dim X``) also works and is used when the group is not a p-group.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .gfp import PrimeField, Subspace
from .groups import FiniteGroup, Subgroup, left_cosets, orbits, relabel_subgroup

DEFAULT_CEILING = 5000


class RepresentationError(ValueError):
    pass


class NotPGroupError(RepresentationError):
    """Raised by the local-algebra routines when the group is not a p-group."""


class ResourceCeilingError(RuntimeError):
    """A resolution term would exceed the dimension ceiling.

    ``partial`` holds whatever was computed before the ceiling was hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else {}


@dataclass(frozen=True)
class Component:
    label: str
    offset: int
    degree: int
    subgroup: tuple[int, ...] | None = None  # Q for a summand k[G/Q]


class Representation:
    """A finite-dimensional kG-module given by generator actions."""

    def __init__(
        self,
        group: FiniteGroup,
        field: PrimeField,
        action,
        components=(),
        degree: int | None = None,
        check: bool = True,
    ):
        self.group = group
        self.field = field
        acts = tuple(field.asarray(a) for a in action)
        if len(acts) != len(group.generators):
            raise RepresentationError("need one action matrix per group generator")
        if degree is None:
            if not acts:
                raise RepresentationError("degree is required for a group without generators")
            degree = acts[0].shape[0]
        self.degree = int(degree)
        if any(a.shape != (self.degree, self.degree) for a in acts):
            raise RepresentationError("action matrices must be square of the module degree")
        self.action = acts
        self.components = tuple(components)
        if check:
            self._validate()

    def __repr__(self):
        return f"Representation(degree={self.degree}, group={self.group.name}, {self.field!r})"

    def _validate(self):
        p = self.field.p
        for a in self.action:
            if not self.field.is_invertible(a):
                raise RepresentationError("generator action is not invertible")
        els = self.elements_action
        t = self.group.cayley
        # rho(s) rho(x) == rho(s x) for every generator s and element x
        for si, s in enumerate(self.group.generators):
            lhs = np.matmul(self.action[si], els) % p
            if not np.array_equal(lhs, els[t[s]]):
                raise RepresentationError("generator actions violate the group relations")
        end = 0
        for c in self.components:
            if c.offset != end:
                raise RepresentationError("components must tile the module in order")
            end += c.degree
            for a in self.action:
                blk = a[c.offset : c.offset + c.degree]
                rest = np.delete(blk, np.s_[c.offset : c.offset + c.degree], axis=1)
                if rest.any():
                    raise RepresentationError("action is not block diagonal along components")
        if self.components and end != self.degree:
            raise RepresentationError("components do not cover the module")

    @cached_property
    def elements_action(self) -> np.ndarray:
        """Array of shape ``(|G|, d, d)``: the action of every group element."""
        n, d, p = self.group.order, self.degree, self.field.p
        out = np.zeros((n, d, d), dtype=np.int64)
        out[0] = np.eye(d, dtype=np.int64)
        for y, (si, x) in self.group.words[1:]:
            out[y] = (self.action[si] @ out[x]) % p
        return out

    def orbit_vectors(self, v) -> np.ndarray:
        """Columns ``g . v`` for all group elements ``g`` in index order."""
        p = self.field.p
        out = np.zeros((self.degree, self.group.order), dtype=np.int64)
        out[:, 0] = self.field.asarray(v)
        for y, (si, x) in self.group.words[1:]:
            out[:, y] = (self.action[si] @ out[:, x]) % p
        return out

    def component(self, i: int) -> "Representation":
        c = self.components[i]
        sl = slice(c.offset, c.offset + c.degree)
        return Representation(
            self.group, self.field, [a[sl, sl] for a in self.action], degree=c.degree, check=False
        )

    def parts(self) -> list[tuple[int, "Representation"]]:
        """``(offset, summand)`` pairs; a module without components is one part."""
        if not self.components:
            return [(0, self)]
        return [(c.offset, self.component(i)) for i, c in enumerate(self.components)]

    def has_regular_summand(self) -> bool:
        return any(c.subgroup == (0,) for c in self.components)

    def same_action(self, other: "Representation") -> bool:
        return (
            self.group is other.group
            and self.field == other.field
            and self.degree == other.degree
            and all(np.array_equal(a, b) for a, b in zip(self.action, other.action))
        )


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A kG-linear map; ``matrix`` is ``target.degree x source.degree``."""

    source: Representation
    target: Representation
    matrix: np.ndarray
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        m = self.source.field.asarray(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.target.degree, self.source.degree):
            raise RepresentationError("map matrix has the wrong shape")
        if self.check and not self.is_equivariant():
            raise RepresentationError("map does not commute with the group action")

    def is_equivariant(self) -> bool:
        p = self.source.field.p
        return all(
            np.array_equal((self.matrix @ a) % p, (b @ self.matrix) % p)
            for a, b in zip(self.source.action, self.target.action)
        )

    def rank(self) -> int:
        return self.source.field.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.degree

    def is_surjective(self) -> bool:
        return self.rank() == self.target.degree

    def kernel(self) -> Subspace:
        return self.source.field.kernel_basis(self.matrix)

    def image(self) -> Subspace:
        return self.source.field.image_basis(self.matrix)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self`` after ``other``."""
        return ModuleMap(other.source, self.target, self.source.field.matmul(self.matrix, other.matrix))


# -- constructions ----------------------------------------------------------


def perm_module(g: FiniteGroup, q: Subgroup, fld: PrimeField) -> Representation:
    """k[G/Q] on the left cosets of ``q`` in canonical order."""
    if q.parent is not g:
        raise RepresentationError("q is not a subgroup of g")
    dec = left_cosets(q)
    n = dec.count
    acts = []
    for s in g.generators:
        a = np.zeros((n, n), dtype=np.int64)
        for c in range(n):
            a[dec.translate(s, c), c] = 1
        acts.append(a)
    comp = Component(f"k[G/{_fmt(q)}]", 0, n, q.elements)
    return Representation(g, fld, acts, components=(comp,), degree=n)


def trivial_module(g: FiniteGroup, fld: PrimeField) -> Representation:
    return perm_module(g, g.whole, fld)


def regular_module(g: FiniteGroup, fld: PrimeField) -> Representation:
    return perm_module(g, g.trivial, fld)


def free_module(g: FiniteGroup, fld: PrimeField, rank: int) -> Representation:
    n = g.order
    reg = regular_module(g, fld)
    acts = [np.kron(np.eye(rank, dtype=np.int64), a) for a in reg.action]
    comps = tuple(Component(f"kG#{i}", i * n, n, (0,)) for i in range(rank))
    return Representation(g, fld, acts, components=comps, degree=rank * n, check=False)


def zero_module(g: FiniteGroup, fld: PrimeField) -> Representation:
    return Representation(g, fld, [np.zeros((0, 0), dtype=np.int64)] * len(g.generators), degree=0)


def _fmt(q: Subgroup) -> str:
    return "{" + ",".join(map(str, q.elements)) + "}"


def direct_sum(mods) -> Representation:
    mods = list(mods)
    if not mods:
        raise RepresentationError("direct sum of nothing")
    if len(mods) == 1:
        return mods[0]
    g, fld = mods[0].group, mods[0].field
    if any(m.group is not g or m.field != fld for m in mods):
        raise RepresentationError("direct sum of modules over different groups or fields")
    degree = sum(m.degree for m in mods)
    acts = []
    for si in range(len(g.generators)):
        a = np.zeros((degree, degree), dtype=np.int64)
        off = 0
        for m in mods:
            a[off : off + m.degree, off : off + m.degree] = m.action[si]
            off += m.degree
        acts.append(a)
    comps, off = [], 0
    for i, m in enumerate(mods):
        if m.components:
            comps.extend(
                Component(c.label, off + c.offset, c.degree, c.subgroup) for c in m.components
            )
        else:
            comps.append(Component(f"summand#{i}", off, m.degree))
        off += m.degree
    return Representation(g, fld, acts, components=comps, degree=degree, check=False)


def dual(m: Representation) -> Representation:
    """Contragredient module: ``g`` acts by ``inverse(action(g)).T``."""
    acts = [m.field.inv(a).T for a in m.action]
    return Representation(m.group, m.field, acts, components=m.components, degree=m.degree, check=False)


def dual_map(f: ModuleMap, source_dual=None, target_dual=None) -> ModuleMap:
    """Transpose of ``f`` as a map ``target* -> source*``."""
    s = source_dual if source_dual is not None else dual(f.source)
    t = target_dual if target_dual is not None else dual(f.target)
    return ModuleMap(t, s, f.matrix.T)


def submodule(m: Representation, sub: Subspace) -> tuple[Representation, ModuleMap]:
    """Restrict the action to an invariant subspace; returns the module and its inclusion."""
    fld = m.field
    b = sub.basis
    piv = list(sub.pivots)
    acts = []
    for a in m.action:
        img = (b @ a.T) % fld.p  # rows: images of basis vectors
        coords = img[:, piv]
        if not np.array_equal((coords @ b) % fld.p, img):
            raise RepresentationError("subspace is not invariant")
        acts.append(coords.T)
    s = Representation(m.group, fld, acts, degree=sub.dim, check=False)
    return s, ModuleMap(s, m, b.T, check=False)


def quotient(m: Representation, sub: Subspace) -> tuple[Representation, ModuleMap]:
    """``m / sub`` on the complement coordinates, with the projection."""
    fld = m.field
    comp = sub.complement_coordinates()
    acts = []
    for a in m.action:
        img = a[:, comp].T  # images of complement unit vectors, as rows
        acts.append(sub.reduce(img)[:, comp].T)
    q = Representation(m.group, fld, acts, degree=len(comp), check=False)
    proj = sub.reduce(np.eye(m.degree, dtype=np.int64))[:, comp].T
    return q, ModuleMap(m, q, proj, check=False)


def restrict(m: Representation, sub: Subgroup) -> Representation:
    """``Res`` to ``sub``, as a module over ``sub.as_group()``."""
    h, emb = sub.as_group()
    acts = [m.elements_action[emb[s]] for s in h.generators]
    return Representation(h, m.field, acts, degree=m.degree)


def induce(x: Representation, g: FiniteGroup, sub: Subgroup) -> Representation:
    """``kG (x)_{kH} X`` for ``X`` over ``H = sub.as_group()``; blocks follow ``G/H``."""
    h, emb = sub.as_group()
    if x.group is not h:
        raise RepresentationError("module is not over the embedded subgroup")
    pos = {e: i for i, e in enumerate(emb)}
    dec = left_cosets(sub)
    n, d = dec.count, x.degree
    acts = []
    for s in g.generators:
        a = np.zeros((n * d, n * d), dtype=np.int64)
        for c, t in enumerate(dec.representatives):
            c2 = dec.translate(s, c)
            t2 = dec.representatives[c2]
            hh = g.mul(g.mul(g.inv(t2), s), t)
            a[c2 * d : (c2 + 1) * d, c * d : (c + 1) * d] = x.elements_action[pos[hh]]
        acts.append(a)
    return Representation(g, x.field, acts, degree=n * d)


# -- Hom spaces -------------------------------------------------------------


def _hom_block(m: Representation, n: Representation) -> Subspace:
    """Equivariant maps ``m -> n`` as a subspace of row-major flattened matrices."""
    fld, p = m.field, m.field.p
    dm, dn = m.degree, n.degree
    size = dm * dn
    if size == 0:
        return Subspace.zero(fld, 0)
    basis = None  # rows spanning the current solution space; None = everything
    for a, b in zip(m.action, n.action):
        if basis is None:
            # vec(X a - b X) = (I (x) a.T - b (x) I) vec(X)
            sys = (np.kron(np.eye(dn, dtype=np.int64), a.T) - np.kron(b, np.eye(dm, dtype=np.int64))) % p
            basis = fld.kernel_basis(sys).basis
        else:
            if basis.shape[0] == 0:
                break
            x = basis.reshape(len(basis), dn, dm)
            resid = (_fmatmul(x, a, p) - _fmatmul(b, x, p)) % p
            coeff = fld.kernel_basis(resid.reshape(len(x), size).T).basis
            basis = _fmatmul(coeff, basis, p)
    if basis is None:
        return Subspace.full(fld, size)
    return Subspace.span(fld, basis, size)


def _fmatmul(a, b, p):
    """Exact product mod p through float64 BLAS while sums stay below 2**52."""
    k = np.shape(a)[-1]
    if k * (p - 1) ** 2 < 2**52:
        return np.rint(np.matmul(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))).astype(np.int64) % p
    return np.matmul(a, b) % p


class HomSpace:
    """``Hom_kG(m, n)`` with a basis assembled from component blocks.

    Each block ``(i, j)`` holds maps from source part ``i`` to target part
    ``j``; within a block the basis is the RREF basis of the flattened maps,
    so coordinates are read off at pivot positions.
    """

    def __init__(self, m: Representation, n: Representation):
        if m.group is not n.group or m.field != n.field:
            raise RepresentationError("Hom between modules over different groups or fields")
        self.source, self.target = m, n
        self.field = m.field
        self.blocks = []  # (src_off, src_deg, tgt_off, tgt_deg, Subspace, start)
        start = 0
        cache: dict = {}
        for so, sm in m.parts():
            for to, tn in n.parts():
                key = (_action_key(sm), _action_key(tn))
                sub = cache.get(key)
                if sub is None:
                    sub = cache[key] = _hom_block(sm, tn)
                self.blocks.append((so, sm.degree, to, tn.degree, sub, start))
                start += sub.dim
        self.dim = start

    def __len__(self):
        return self.dim

    def block_dims(self) -> list[int]:
        return [b[4].dim for b in self.blocks]

    def matrix(self, k: int) -> np.ndarray:
        """Full ``target.degree x source.degree`` matrix of basis element ``k``."""
        for so, sd, to, td, sub, start in self.blocks:
            if start <= k < start + sub.dim:
                out = np.zeros((self.target.degree, self.source.degree), dtype=np.int64)
                out[to : to + td, so : so + sd] = sub.basis[k - start].reshape(td, sd)
                return out
        raise IndexError(k)

    def matrices(self) -> np.ndarray:
        out = np.zeros((self.dim, self.target.degree, self.source.degree), dtype=np.int64)
        for so, sd, to, td, sub, start in self.blocks:
            out[start : start + sub.dim, to : to + td, so : so + sd] = sub.basis.reshape(sub.dim, td, sd)
        return out

    def coordinates(self, f) -> np.ndarray:
        """Coordinates of a full matrix (or a stack of them) in this basis."""
        f = self.field.asarray(f)
        single = f.ndim == 2
        if single:
            f = f[None]
        out = np.zeros((f.shape[0], self.dim), dtype=np.int64)
        covered = np.zeros(f.shape[1:], dtype=bool)
        for so, sd, to, td, sub, start in self.blocks:
            blk = f[:, to : to + td, so : so + sd].reshape(f.shape[0], td * sd)
            covered[to : to + td, so : so + sd] = True
            if sub.dim:
                c = sub.coordinates(blk)
                if c is None:
                    raise RepresentationError("matrix is not in the Hom space")
                out[:, start : start + sub.dim] = c
            elif blk.any():
                raise RepresentationError("matrix is not in the Hom space")
        if f[:, ~covered].any():
            raise RepresentationError("matrix is not in the Hom space")
        return out[0] if single else out

    def maps(self) -> list[ModuleMap]:
        return [ModuleMap(self.source, self.target, m, check=False) for m in self.matrices()]


def _action_key(m: Representation):
    return (m.degree,) + tuple(a.tobytes() for a in m.action)


def hom_space(m: Representation, n: Representation) -> list[ModuleMap]:
    return HomSpace(m, n).maps()


def hom_dim(m: Representation, n: Representation) -> int:
    return HomSpace(m, n).dim


def find_isomorphism(m: Representation, n: Representation, tries: int = 256, seed: int = 0):
    """An invertible equivariant map ``m -> n`` or ``None`` if none is found.

    Basis elements are tried first, then seeded random combinations; ``None``
    is only a proof of non-isomorphism when the degrees differ.
    """
    if m.degree != n.degree:
        return None
    hs = HomSpace(m, n)
    if hs.dim == 0:
        return None if m.degree else ModuleMap(m, n, np.zeros((0, 0), dtype=np.int64))
    mats = hs.matrices()
    fld = m.field
    for x in mats:
        if fld.is_invertible(x):
            return ModuleMap(m, n, x)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        c = rng.integers(0, fld.p, size=hs.dim)
        x = np.tensordot(c, mats, axes=1) % fld.p
        if fld.is_invertible(x):
            return ModuleMap(m, n, x)
    return None


# -- local (p-group) structure ----------------------------------------------


def _require_p_group(m: Representation):
    if not m.group.is_p_group(m.field.p):
        raise NotPGroupError(
            f"{m.group.name} is not a {m.field.p}-group; kG is not local"
        )


def radical_submodule(m: Representation) -> Subspace:
    """``rad(m) = sum of images of (g - 1)`` over generators (p-groups only)."""
    _require_p_group(m)
    fld = m.field
    if not m.action:
        return Subspace.zero(fld, m.degree)
    eye = np.eye(m.degree, dtype=np.int64)
    return fld.image_basis(np.hstack([(a - eye) % fld.p for a in m.action]))


def socle(m: Representation) -> Subspace:
    """Fixed points ``∩ ker(g - 1)`` over generators (p-groups only)."""
    _require_p_group(m)
    fld = m.field
    if not m.action:
        return Subspace.full(fld, m.degree)
    eye = np.eye(m.degree, dtype=np.int64)
    return fld.kernel_basis(np.vstack([(a - eye) % fld.p for a in m.action]))


def top_generators(m: Representation) -> np.ndarray:
    """Unit vectors at the non-pivot positions of ``rad(m)``; they lift a basis of the top."""
    rad = radical_submodule(m)
    comp = rad.complement_coordinates()
    return np.eye(m.degree, dtype=np.int64)[comp]


def _cover_matrix(m: Representation, gens: np.ndarray) -> np.ndarray:
    """Matrix of ``kG^t -> m`` sending free generator ``i`` to ``gens[i]``."""
    n = m.group.order
    out = np.zeros((m.degree, len(gens) * n), dtype=np.int64)
    for i, v in enumerate(gens):
        out[:, i * n : (i + 1) * n] = m.orbit_vectors(v)
    return out


def projective_cover(m: Representation) -> ModuleMap:
    """``kP^t -> m`` with ``t = dim(m / rad m)`` (p-groups only)."""
    gens = top_generators(m)
    free = free_module(m.group, m.field, len(gens))
    return ModuleMap(free, m, _cover_matrix(m, gens))


def injective_hull(m: Representation) -> ModuleMap:
    """``m -> kP^s`` with ``s = dim soc(m)``: the dual of the cover of the dual.

    Permutation matrices are orthogonal, so the dual of a free module is the
    same free module and ``dual(dual(m))`` is ``m`` itself.
    """
    _require_p_group(m)
    dm = dual(m)
    cover = projective_cover(dm)
    return ModuleMap(m, cover.source, cover.matrix.T)


def syzygy(m: Representation, minimal: bool = True) -> tuple[Representation, ModuleMap]:
    """Kernel of the projective cover (or of the free cover when ``minimal`` is false)."""
    if minimal:
        gens = top_generators(m)
    else:
        gens = np.eye(m.degree, dtype=np.int64)
    free = free_module(m.group, m.field, len(gens))
    k = m.field.kernel_basis(_cover_matrix(m, gens))
    return submodule(free, k)


# -- resolutions and Ext ----------------------------------------------------


class Resolution:
    """A free resolution ``... -> P_1 -> P_0 -> M``, built lazily.

    ``ranks[i]`` is the free rank of ``P_i``; ``coeffs[i]`` (``i >= 1``) has
    shape ``(ranks[i], ranks[i-1], |G|)`` and records the image of each free
    generator of ``P_i`` in ``P_{i-1}`` as group-algebra coefficients;
    ``syzygies[i]`` is ``Ω^i M`` with basis rows inside ``P_{i-1}``.
    """

    def __init__(self, module: Representation, minimal: bool = True, ceiling: int = DEFAULT_CEILING):
        if minimal:
            _require_p_group(module)
        self.module = module
        self.minimal = minimal
        self.ceiling = ceiling
        self.ranks: list[int] = []
        self.coeffs: list[np.ndarray | None] = [None]
        self.syzygies: list[Representation] = [module]
        self._bases: list[np.ndarray | None] = [None]  # Ω^i basis rows in P_{i-1}
        self._gens: dict[int, np.ndarray] = {}

    def _generators(self, i: int) -> np.ndarray:
        om = self.syzygies[i]
        if self.minimal:
            return top_generators(om)
        return np.eye(om.degree, dtype=np.int64)

    def ensure_term(self, i: int):
        """Make ``ranks[i]`` and ``coeffs[i]`` available."""
        n = self.module.group.order
        while len(self.ranks) <= i:
            j = len(self.ranks)
            self.ensure_syzygy(j)
            gens = self._generators(j)
            t = len(gens)
            if t * n > self.ceiling:
                raise ResourceCeilingError(
                    f"resolution term P_{j} has dimension {t * n} > ceiling {self.ceiling}",
                    partial={"ranks": list(self.ranks)},
                )
            self.ranks.append(t)
            if j >= 1:
                rows = (gens @ self._bases[j]) % self.module.field.p
                self.coeffs.append(rows.reshape(t, self.ranks[j - 1], n))
            self._gens[j] = gens

    def ensure_syzygy(self, i: int):
        """Make ``syzygies[i]`` available."""
        while len(self.syzygies) <= i:
            j = len(self.syzygies) - 1  # build Ω^{j+1} from the cover of Ω^j
            self.ensure_term(j)
            om = self.syzygies[j]
            gens = self._gens[j]
            k = om.field.kernel_basis(_cover_matrix(om, gens))
            free = free_module(om.group, om.field, len(gens))
            nxt, _ = submodule(free, k)
            self.syzygies.append(nxt)
            self._bases.append(k.basis)

    def dual_differential(self, i: int, n: Representation) -> np.ndarray:
        """Matrix of ``Hom(P_{i-1}, N) -> Hom(P_i, N)`` with ``Hom(P_j, N) = N^{ranks[j]}``."""
        self.ensure_term(i)
        c = self.coeffs[i]
        r = n.elements_action.astype(np.float64)
        d = n.degree
        blk = np.einsum("jlg,gab->jalb", c.astype(np.float64), r)
        return np.rint(blk).astype(np.int64).reshape(self.ranks[i] * d, self.ranks[i - 1] * d) % n.field.p

    def ext_dim(self, n: Representation, i: int) -> int:
        if i < 1:
            raise ValueError("Ext index must be positive")
        fld = n.field
        if n.degree == 0:
            return 0
        self.ensure_term(i)
        rank_in = fld.rank(self.dual_differential(i, n))
        if self.minimal:
            self.ensure_term(i + 1)
            cycles = self.ranks[i] * n.degree - fld.rank(self.dual_differential(i + 1, n))
        else:
            # maps P_i -> N killing Ω^{i+1} are Hom(Ω^i, N)
            self.ensure_syzygy(i)
            cycles = _hom_block(self.syzygies[i], n).dim
        return cycles - rank_in


_RESOLUTIONS: dict = {}


def _resolution_for(m: Representation, minimal: bool, ceiling: int) -> Resolution:
    key = (id(m.group), m.field.p, minimal, _action_key(m))
    hit = _RESOLUTIONS.get(key)
    if hit is None or hit.module.group is not m.group or hit.ceiling != ceiling:
        hit = _RESOLUTIONS[key] = Resolution(m, minimal=minimal, ceiling=ceiling)
    return hit


def clear_resolution_cache():
    _RESOLUTIONS.clear()


def ext_dim(
    m: Representation,
    n: Representation,
    i: int,
    method: str = "auto",
    ceiling: int = DEFAULT_CEILING,
) -> int:
    """``dim Ext^i_kG(m, n)``, split over the components of both arguments.

    ``method`` is ``"minimal"`` (p-groups only), ``"free"`` or ``"auto"``
    (minimal when available).
    """
    if m.group is not n.group or m.field != n.field:
        raise RepresentationError("Ext between modules over different groups or fields")
    if i < 1:
        raise ValueError("Ext index must be positive")
    if method == "auto":
        minimal = m.group.is_p_group(m.field.p)
    elif method in ("minimal", "free"):
        minimal = method == "minimal"
    else:
        raise ValueError(f"unknown method {method!r}")
    total = 0
    for _, mp in m.parts():
        res = _resolution_for(mp, minimal, ceiling)
        for _, nq in n.parts():
            total += res.ext_dim(nq, i)
    return total


# -- restriction of permutation modules --------------------------------------


def decompose_permutation_restriction(g: FiniteGroup, p_sub: Subgroup, q: Subgroup) -> list[Subgroup]:
    """Stabilizers (subgroups of ``p_sub``) of the ``p_sub``-orbits on ``G/q``.

    ``Res k[G/q]`` is the direct sum of the permutation modules of ``p_sub``
    on these stabilizers.
    """
    if p_sub.parent is not g or q.parent is not g:
        raise RepresentationError("subgroups of a different group")
    return [o.stabilizer for o in orbits(p_sub, q)]


def restriction_isomorphism(g: FiniteGroup, p_sub: Subgroup, q: Subgroup, fld: PrimeField) -> ModuleMap:
    """Explicit permutation isomorphism ``(+) k[P/Stab] -> Res k[G/q]``.

    Coset ``u Stab`` of orbit ``j`` goes to the coset ``u x_j q``.
    """
    h, emb = p_sub.as_group()
    res = restrict(perm_module(g, q, fld), p_sub)
    dec = left_cosets(q)
    parts, cols = [], []
    for o in orbits(p_sub, q):
        stab = relabel_subgroup(o.stabilizer, h, emb)
        parts.append(perm_module(h, stab, fld))
        for rep in left_cosets(stab).representatives:
            cols.append(dec.translate(emb[rep], o.representative))
    total = direct_sum(parts)
    mat = np.zeros((res.degree, total.degree), dtype=np.int64)
    mat[cols, np.arange(total.degree)] = 1
    f = ModuleMap(total, res, mat)
    if not fld.is_invertible(f.matrix):
        raise RepresentationError("orbit decomposition did not give a bijection")
    return f


# -- exactness ----------------------------------------------------------------


@dataclass
class ExactSequenceWitness:
    """Linear maps ``f_0, f_1, ...`` with ``f_{k+1} f_k = 0`` checked for exactness.

    With ``zero_left`` the sequence starts ``0 -> A_0`` so ``f_0`` must be
    injective.  ``ranks`` and ``junctions`` are filled by :meth:`verify`.
    """

    field: PrimeField
    maps: list[np.ndarray]
    zero_left: bool = True
    zero_right: bool = False
    ranks: list[int] = dc_field(default_factory=list)
    dims: list[int] = dc_field(default_factory=list)
    junctions: list[bool] = dc_field(default_factory=list)

    @classmethod
    def from_module_maps(cls, maps, **kw) -> "ExactSequenceWitness":
        maps = list(maps)
        for a, b in zip(maps, maps[1:]):
            if a.target is not b.source and not a.target.same_action(b.source):
                raise RepresentationError("maps do not compose")
        return cls(maps[0].source.field, [f.matrix for f in maps], **kw)

    def verify(self) -> bool:
        fld = self.field
        ms = [fld.asarray(m) for m in self.maps]
        for a, b in zip(ms, ms[1:]):
            if a.shape[0] != b.shape[1]:
                raise RepresentationError("maps do not compose")
        self.dims = [ms[0].shape[1]] + [m.shape[0] for m in ms]
        self.ranks = [fld.rank(m) for m in ms]
        ok = []
        if self.zero_left:
            ok.append(self.ranks[0] == self.dims[0])
        for a, b in zip(ms, ms[1:]):
            ok.append(fld.image_basis(a) == fld.kernel_basis(b))
        if self.zero_right:
            ok.append(self.ranks[-1] == self.dims[-1])
        self.junctions = ok
        return all(ok)

    @property
    def exact(self) -> bool:
        return bool(self.junctions) and all(self.junctions)
