"""Dominant dimension of ``End_kP(V)`` and the theorem-level pipelines.

The main path is Müller's rule.  For a module ``v`` that is a generator and
cogenerator over a symmetric algebra (here: ``v`` has a regular summand and
kG is symmetric),

    ddim End(v) = 2 + max{n : Ext^i(v, v) = 0 for 1 <= i <= n},

so the first nonvanishing ``Ext^i(v, v)`` pins the value to ``i + 1``.  The
lower bound ``ddim >= 2`` is additionally witnessed by an explicit exact
sequence ``0 -> F -> Hom(V, I^0) -> Hom(V, I^1)`` built from the first two
terms of an injective coresolution of ``V``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .endo import EndAlgebra, build_U, build_V, end_algebra, hom_as_right_module, subgroups_of
from .gfp import PrimeField
from .groups import (
    FiniteGroup,
    double_cosets,
    relabel_subgroup,
    single_block_certified,
    sylow_subgroup,
)
from .rep import (
    DEFAULT_CEILING,
    ExactSequenceWitness,
    HomSpace,
    NotPGroupError,
    Representation,
    RepresentationError,
    ext_dim,
    find_isomorphism,
    induce,
    injective_hull,
    perm_module,
    quotient,
    restriction_isomorphism,
    trivial_module,
)

SCHEMA_VERSION = 1
DEFAULT_CUTOFF = 3
# right actions on the J-terms are materialized only below this many entries
_RIGHT_ACTION_BUDGET = 4_000_000


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class DdimValue:
    """``exact`` n, ``at_least`` n, or ``infinite``."""

    kind: str
    value: int | None = None

    def __post_init__(self):
        if self.kind not in ("exact", "at_least", "infinite"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if (self.kind == "infinite") != (self.value is None):
            raise ValueError("infinite carries no value; the other kinds need one")

    def __str__(self):
        if self.kind == "infinite":
            return "infinite"
        return str(self.value) if self.kind == "exact" else f">={self.value}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": self.value}


def Exact(n: int) -> DdimValue:
    return DdimValue("exact", int(n))


def AtLeast(n: int) -> DdimValue:
    return DdimValue("at_least", int(n))


Infinite = DdimValue("infinite")


# -- Müller path --------------------------------------------------------------


def mueller_with_table(v: Representation, cutoff: int = DEFAULT_CUTOFF, method: str = "auto",
                       ceiling: int = DEFAULT_CEILING, full_table: bool = False):
    """``(DdimValue, {i: dim Ext^i(v, v)})``.

    The table stops at the first nonzero group unless ``full_table`` is set.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if not v.has_regular_summand():
        raise PreconditionError("module has no regular summand; Müller's rule does not apply")
    if v.group.order % v.field.p:
        return Infinite, {i: 0 for i in range(1, cutoff + 1)} if full_table else {}
    table: dict[int, int] = {}
    value = None
    for i in range(1, cutoff + 1):
        table[i] = ext_dim(v, v, i, method=method, ceiling=ceiling)
        if table[i] and value is None:
            value = Exact(i + 1)
            if not full_table:
                break
    return (value or AtLeast(cutoff + 2)), table


def ddim_mueller(v: Representation, cutoff: int = DEFAULT_CUTOFF, method: str = "auto",
                 ceiling: int = DEFAULT_CEILING) -> DdimValue:
    return mueller_with_table(v, cutoff, method, ceiling)[0]


# -- the ddim >= 2 witness ----------------------------------------------------------


@dataclass
class LowerBoundWitness:
    sequence: ExactSequenceWitness  # 0 -> F -> J^0 -> J^1 of right F-modules
    module_sequence: ExactSequenceWitness  # 0 -> V -> I^0 -> I^1 of kP-modules
    hull_ranks: tuple[int, int]  # free ranks s_0, s_1 of I^0, I^1
    dims: dict[str, int]
    projective: bool  # J^0, J^1 are sums of copies of Hom(V, kP) = e_1 F
    module_maps: bool | None = None  # F-linearity of both maps; None when skipped for size

    @property
    def exact(self) -> bool:
        return self.sequence.exact and self.module_sequence.exact

    def ranks(self) -> dict[str, Any]:
        return {
            "dim_F": self.dims["F"],
            "dim_J0": self.dims["J0"],
            "dim_J1": self.dims["J1"],
            "rank_F_to_J0": self.sequence.ranks[0],
            "rank_J0_to_J1": self.sequence.ranks[1],
            "hull_ranks": list(self.hull_ranks),
            "exact": self.exact,
            "projective_terms": self.projective,
            "module_maps": self.module_maps,
        }


def verify_lower_bound_witness(v: Representation, end: EndAlgebra | None = None) -> LowerBoundWitness:
    """Build ``0 -> V -> I^0 -> I^1`` and apply ``Hom(V, -)``; check exactness.

    ``I^0`` and ``I^1`` are injective hulls, free over kP.  Projectivity of the
    ``J`` terms is checked by matching every free summand against the regular
    summand of ``V``.
    """
    if not v.group.is_p_group(v.field.p):
        raise NotPGroupError("the coresolution witness is built over a p-group")
    if end is None:
        end = end_algebra(v)
    p = v.field.p
    iota = injective_hull(v)
    i0 = iota.target
    coker, proj = quotient(i0, iota.image())
    hull1 = injective_hull(coker)
    i1 = hull1.target
    psi = (hull1.matrix @ proj.matrix) % p
    module_seq = ExactSequenceWitness(v.field, [iota.matrix, psi], zero_left=True)
    module_seq.verify()

    emats = end.matrices()
    j0 = HomSpace(v, i0)
    j1 = HomSpace(v, i1)
    alpha = j0.coordinates(np.einsum("ij,ajk->aik", iota.matrix, emats) % p).T if end.dim else np.zeros((j0.dim, 0), dtype=np.int64)
    j0mats = j0.matrices()
    if j0.dim:
        beta = j1.coordinates(np.einsum("ij,ajk->aik", psi, j0mats) % p).T
    else:
        beta = np.zeros((j1.dim, 0), dtype=np.int64)
    seq = ExactSequenceWitness(v.field, [alpha.reshape(j0.dim, end.dim), beta.reshape(j1.dim, j0.dim)], zero_left=True)
    seq.verify()

    module_maps = None
    if end.dim * (end.dim**2 + j0.dim**2 + j1.dim**2) <= _RIGHT_ACTION_BUDGET:
        module_maps = all(
            _is_right_module_map(src, dst, f, p)
            for src, dst, f in (
                (hom_as_right_module(end, v), hom_as_right_module(end, i0), alpha),
                (hom_as_right_module(end, i0), hom_as_right_module(end, i1), beta),
            )
        )

    regular = [v.component(i) for i, c in enumerate(v.components) if c.subgroup == (0,)]
    projective = bool(regular) and all(
        part.same_action(regular[0]) for mod in (i0, i1) for _, part in mod.parts() if part.degree
    )
    # each J-term is (Hom(V, kP))^s and Hom(V, kP) = e_1 F has the dimension of its Peirce row
    if projective and regular:
        reg_idx = next(i for i, c in enumerate(v.components) if c.subgroup == (0,))
        row = sum(w for (q, r), w in end.block_dims().items() if r == reg_idx)
        s0, s1 = len(i0.components), len(i1.components)
        projective = j0.dim == s0 * row and j1.dim == s1 * row
    return LowerBoundWitness(
        seq,
        module_seq,
        (len(i0.components), len(i1.components)),
        {"F": end.dim, "J0": j0.dim, "J1": j1.dim, "V": v.degree, "I0": i0.degree, "I1": i1.degree},
        projective,
        module_maps,
    )


def _is_right_module_map(src, dst, f, p) -> bool:
    f = f.reshape(dst.dim, src.dim)
    return all(
        np.array_equal((f @ a) % p, (b @ f) % p) for a, b in zip(src.action, dst.action)
    )


# -- main pipeline ---------------------------------------------------------------


@dataclass
class DdimReport:
    group_spec: str
    group_order: int
    p: int
    sylow_order: int
    subgroup_count: int
    dim_V: int
    dim_F: int
    hom_dims: list[dict]
    ext: dict[int, int]
    ddim: DdimValue
    witnesses: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    group_algebra: dict | None = None
    timing_ms: float | None = None

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": {"spec": self.group_spec, "order": self.group_order, "sylow_order": self.sylow_order},
            "p": self.p,
            "subgroups": self.subgroup_count,
            "dim_V": self.dim_V,
            "dim_F": self.dim_F,
            "hom_dims": self.hom_dims,
            "ext": [{"i": i, "dim": d} for i, d in sorted(self.ext.items())],
            "ddim": self.ddim.to_json(),
            "witnesses": self.witnesses,
            "checks": {k: self.checks.get(k) for k in ("double_cosets", "theorem2", "remark", "oracle")},
            "flags": list(self.flags),
            "group_algebra": self.group_algebra,
            "timing_ms": self.timing_ms,
        }


def comack_ddim(
    g: FiniteGroup,
    p: int,
    cutoff: int = DEFAULT_CUTOFF,
    spec: str | None = None,
    verify_double_cosets: bool = False,
    ceiling: int = DEFAULT_CEILING,
    timing: bool = False,
) -> DdimReport:
    """Dominant dimension of ``End_kP(V)`` for a Sylow ``p``-subgroup ``P`` of ``g``.

    For a p-group this is the cohomological Mackey algebra of ``kP``.  For
    other groups ``V`` is built over ``P`` as a group in its own right, and
    ``End_kG(U)`` with ``U = (+)_{Q <= P} k[G/Q]`` is computed alongside; the
    latter is flagged unless kG is certified to be a single block.
    """
    t0 = time.perf_counter()
    fld = PrimeField(p)
    sylow = sylow_subgroup(g, p)
    flags = []
    pg = g if g.is_p_group(p) else sylow.as_group()[0]
    if sylow.order == 1:
        flags.append("trivial defect")

    v = build_V(pg, fld)
    subs = pg.subgroups
    end = end_algebra(v)
    dims = end.block_dims()
    hom_dims = []
    dc_ok = True
    for (qi, ri), d in sorted(dims.items()):
        n_dc = double_cosets(subs[qi], subs[ri])[0]
        dc_ok &= n_dc == d
        hom_dims.append({"q": list(subs[qi].elements), "r": list(subs[ri].elements), "dim": d, "double_cosets": n_dc})

    value, table = mueller_with_table(v, cutoff, ceiling=ceiling, full_table=False)
    witness = verify_lower_bound_witness(v, end)
    report = DdimReport(
        group_spec=spec or g.name,
        group_order=g.order,
        p=p,
        sylow_order=sylow.order,
        subgroup_count=len(subs),
        dim_V=v.degree,
        dim_F=end.dim,
        hom_dims=hom_dims,
        ext=table,
        ddim=value,
        witnesses={"coresolution_ranks": witness.ranks()},
        flags=flags,
    )
    if verify_double_cosets:
        report.checks["double_cosets"] = bool(dc_ok)
    if not witness.exact or not witness.projective or witness.module_maps is False:
        report.flags.append("lower-bound witness failed")

    if pg is not g:
        u = build_U(g, sylow, fld)
        gvalue, gtable = mueller_with_table(u, cutoff, ceiling=ceiling)
        certified = single_block_certified(g, p)
        if not certified:
            report.flags.append("whole-group-algebra, not per-block")
        report.group_algebra = {
            "dim_U": u.degree,
            "dim_E": HomSpace(u, u).dim,
            "ext": [{"i": i, "dim": d} for i, d in sorted(gtable.items())],
            "ddim": gvalue.to_json(),
            "single_block": certified,
        }
    if timing:
        report.timing_ms = round((time.perf_counter() - t0) * 1000.0, 3)
    return report


# -- kG versus kP ------------------------------------------------------------------


@dataclass
class Theorem2Report:
    group: str
    p: int
    sylow_order: int
    induction: list[bool]  # kG (x)_kP k[P/Q] = k[G/Q], per Q <= P
    restriction: list[dict]  # Res k[G/Q] = (+) k[P/Stab], per Q <= P
    ddim_group: DdimValue  # End_kG(U)
    ddim_sylow: DdimValue  # End_kP(V)

    @property
    def hypotheses_ok(self) -> bool:
        return all(self.induction) and all(r["ok"] for r in self.restriction)

    @property
    def equal(self) -> bool:
        return self.ddim_group == self.ddim_sylow

    @property
    def ok(self) -> bool:
        return self.hypotheses_ok and self.equal

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "sylow_order": self.sylow_order,
            "induction": self.induction,
            "restriction": self.restriction,
            "ddim_group": self.ddim_group.to_json(),
            "ddim_sylow": self.ddim_sylow.to_json(),
            "hypotheses_ok": self.hypotheses_ok,
            "equal": self.equal,
            "ok": self.ok,
        }


def _check_index(g: FiniteGroup, p: int):
    sylow = sylow_subgroup(g, p)
    if g.order % p or (g.order // sylow.order) % p == 0:
        raise PreconditionError("separable equivalence not certified: need p | |G| and p not dividing [G:P]")
    return sylow


def verify_theorem2_instance(g: FiniteGroup, p: int, cutoff: int = DEFAULT_CUTOFF,
                             ceiling: int = DEFAULT_CEILING) -> Theorem2Report:
    """``A = kG``, ``B = kP``, ``M = kG``: check both add-hypotheses and compare ddims."""
    sylow = _check_index(g, p)
    fld = PrimeField(p)
    h, emb = sylow.as_group()
    induction, restriction = [], []
    for q in subgroups_of(sylow):
        qh = relabel_subgroup(q, h, emb)
        ind = induce(perm_module(h, qh, fld), g, sylow)
        induction.append(find_isomorphism(ind, perm_module(g, q, fld)) is not None)
        try:
            iso = restriction_isomorphism(g, sylow, q, fld)
            stabs = [c.subgroup for c in iso.source.components]
            in_list = all(any(s.elements == t for s in h.subgroups) for t in stabs)
            restriction.append({"q": list(q.elements), "stabilizer_orders": [len(t) for t in stabs], "ok": in_list})
        except RepresentationError:
            restriction.append({"q": list(q.elements), "stabilizer_orders": [], "ok": False})
    d_group = ddim_mueller(build_U(g, sylow, fld), cutoff, ceiling=ceiling)
    d_sylow = ddim_mueller(build_V(h, fld), cutoff, ceiling=ceiling)
    return Theorem2Report(g.name, p, sylow.order, induction, restriction, d_group, d_sylow)


# -- the direct Ext argument ----------------------------------------------------------


@dataclass
class RemarkReport:
    group: str
    p: int
    ext1_U: int  # dim Ext^1_kG(U, U)
    ext1_k: int  # dim Ext^1_kP(k, k)

    @property
    def ok(self) -> bool:
        return self.ext1_U >= self.ext1_k >= 1

    def to_json(self) -> dict:
        return {"group": self.group, "p": self.p, "ext1_U": self.ext1_U, "ext1_k": self.ext1_k, "ok": self.ok}


def remark_check(g: FiniteGroup, p: int, ceiling: int = DEFAULT_CEILING) -> RemarkReport:
    """``dim Ext^1_kG(U, U) >= dim Ext^1_kP(k, k) >= 1``, both computed independently."""
    sylow = _check_index(g, p)
    fld = PrimeField(p)
    h, _ = sylow.as_group()
    u = build_U(g, sylow, fld)
    e_u = ext_dim(u, u, 1, ceiling=ceiling)
    k = trivial_module(h, fld)
    e_k = ext_dim(k, k, 1, ceiling=ceiling)
    return RemarkReport(g.name, p, e_u, e_k)
