"""Finite groups given by Cayley tables.

Elements are the integers ``0..n-1`` with ``0`` the identity.  Products are
read from ``cayley[a, b] = a*b``.  Everything here is brute force and meant
for groups of order at most a few dozen; the default bound is 64.

Named families and their generators
-----------------------------------
=====================  ===========================================  ==================
family                 element encoding                             generators
=====================  ===========================================  ==================
``cyclic(m)``          ``k`` is ``x^k``                             ``[x]``
``elementary_abelian`` vectors over ``Z/p``, lexicographic          unit vectors
``dihedral(n)``        ``i + (n/2) j`` is ``r^i s^j``; order ``n``  ``[r, s]``
``quaternion8``        ``1, -1, i, -i, j, -j, k, -k``               ``[i, j]``
``symmetric(m)``       permutations in lexicographic order         ``[(1..m), (1 2)]``
``direct_product``     ``(a, b)`` is ``a * |H| + b``                both factors' generators
=====================  ===========================================  ==================

Permutation groups are written in cycle notation with 1-based points::

    group   := perm ("," perm)*
    perm    := "()" | cycle+
    cycle   := "(" point (" " point)* ")"

so ``"(1 2 3),(1 2)"`` is two generators of the symmetric group on three
points; blanks between cycles are ignored.  Group elements of a permutation
group are ordered lexicographically as images of ``1..n``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

DEFAULT_ORDER_BOUND = 64


class GroupError(ValueError):
    pass


class OrderBoundError(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group by Cayley table.

    ``cayley[a, b]`` is the index of ``a*b``.  The identity is element 0.
    """

    cayley: np.ndarray
    generators: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.cayley, dtype=np.int64)
        object.__setattr__(self, "cayley", t)
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        self._validate()

    def _validate(self):
        t = self.cayley
        n = t.shape[0]
        if n == 0 or t.shape != (n, n):
            raise GroupError("Cayley table must be a nonempty square array")
        full = np.arange(n)
        if not all(np.array_equal(np.sort(row), full) for row in t):
            raise GroupError("Cayley table rows are not permutations")
        if not all(np.array_equal(np.sort(col), full) for col in t.T):
            raise GroupError("Cayley table columns are not permutations")
        if not (np.array_equal(t[0], full) and np.array_equal(t[:, 0], full)):
            raise GroupError("element 0 is not the identity")
        if n <= 64:
            # (ab)c == a(bc) for all triples
            left = t[t[:, :, None], np.arange(n)[None, None, :]]
            right = t[np.arange(n)[:, None, None], t[None, :, :]]
            if not np.array_equal(left, right):
                raise GroupError("Cayley table is not associative")
        if any(not 0 <= g < n for g in self.generators):
            raise GroupError("generator index out of range")
        if len(self.closure(self.generators)) != n:
            raise GroupError("generators do not generate the group")

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmin(self.cayley, axis=1)  # a*b == 0 picks b = a^-1

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def closure(self, gens) -> frozenset[int]:
        """The subgroup generated by ``gens`` (as an element set)."""
        seen = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.cayley[s, x])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def words(self) -> list[tuple[int, tuple[int, int]]]:
        """Shortest-word table from a breadth-first search of the Cayley graph.

        Entry ``(y, (s, x))`` means ``y = generators[s] * x`` with ``x`` found
        earlier; entries are in BFS order and the first is ``(0, (-1, -1))``.
        """
        order = [(0, (-1, -1))]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for si, s in enumerate(self.generators):
                    y = int(self.cayley[s, x])
                    if y not in seen:
                        seen.add(y)
                        order.append((y, (si, x)))
                        nxt.append(y)
            frontier = nxt
        return order

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return _enumerate_subgroups(self)

    def subgroup(self, elements) -> "Subgroup":
        return Subgroup(self, tuple(sorted(int(e) for e in elements)))

    def generated(self, gens) -> "Subgroup":
        return self.subgroup(self.closure(gens))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(e) for e in self.elements)))
        object.__setattr__(self, "elements", els)
        g = self.parent
        s = set(els)
        if 0 not in s:
            raise GroupError("subgroup misses the identity")
        if g.order % len(els):
            raise GroupError("subgroup order does not divide the group order")
        t = g.cayley[np.ix_(els, els)]
        if not set(np.unique(t).tolist()) <= s:
            raise GroupError("element set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, x) -> bool:
        return int(x) in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self._set <= other._set

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    def sort_key(self):
        return (self.order, self.elements)

    def is_normal(self) -> bool:
        g = self.parent
        return all(
            g.mul(g.mul(x, h), g.inv(x)) in self for x in range(g.order) for h in self.elements
        )

    def conjugate(self, x: int) -> "Subgroup":
        """``x H x^-1``."""
        g = self.parent
        return g.subgroup(g.mul(g.mul(x, h), g.inv(x)) for h in self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan elements in order, keep those not yet reached."""
        gens: list[int] = []
        reached = frozenset({0})
        for x in self.elements:
            if x not in reached:
                gens.append(x)
                reached = self.parent.closure(gens)
        return tuple(gens)

    @cached_property
    def _as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        els = self.elements
        pos = {x: i for i, x in enumerate(els)}
        t = np.array([[pos[self.parent.mul(a, b)] for b in els] for a in els], dtype=np.int64)
        gens = tuple(pos[x] for x in self.generators)
        labels = None
        if self.parent.labels is not None:
            labels = tuple(self.parent.labels[x] for x in els)
        name = f"subgroup of order {self.order} in {self.parent.name}".strip()
        return FiniteGroup(t, gens, labels, name), els

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """This subgroup as a group in its own right, plus the embedding.

        The embedding maps the new index ``i`` to ``elements[i]`` of the parent,
        so the identity is still index 0.
        """
        return self._as_group


def relabel_subgroup(sub: Subgroup, group: FiniteGroup, embedding) -> Subgroup:
    """Transport a subgroup of the parent, contained in the embedded image, into ``group``."""
    pos = {x: i for i, x in enumerate(embedding)}
    try:
        return group.subgroup(pos[x] for x in sub.elements)
    except KeyError:
        raise GroupError("subgroup is not contained in the embedded group") from None


# -- subgroup lattice -------------------------------------------------------


def all_subgroups(g: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by ``(order, elements)``.

    Seeds are the cyclic subgroups; joins of pairs are added until no new
    subgroup appears.  Every subgroup is a join of cyclic ones, so this is
    exhaustive.
    """
    if g.order > bound:
        raise OrderBoundError(f"group order {g.order} exceeds bound {bound}")
    return list(g.subgroups)


def _enumerate_subgroups(g: FiniteGroup) -> tuple[Subgroup, ...]:
    found: dict[frozenset[int], tuple[int, ...]] = {}
    for x in range(g.order):
        s = g.closure([x])
        found.setdefault(s, (x,))
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for a in frontier:
            for b in current:
                if a <= b or b <= a:
                    continue
                gens = found[a] + found[b]
                j = g.closure(gens)
                if j not in found:
                    found[j] = gens
                    new.append(j)
        frontier = new
    return tuple(sorted((g.subgroup(s) for s in found), key=Subgroup.sort_key))


def sylow_subgroup(g: FiniteGroup, p: int) -> Subgroup:
    """The first Sylow ``p``-subgroup in canonical subgroup order."""
    n, pa = g.order, 1
    while n % p == 0:
        n //= p
        pa *= p
    if pa == 1:
        return g.trivial
    for s in g.subgroups:
        if s.order == pa:
            return s
    raise AssertionError("Sylow's theorem failed")  # pragma: no cover


# -- cosets -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CosetDecomposition:
    """Left cosets ``xQ`` ordered by their least element.

    ``representatives[c]`` is the least element of coset ``c`` and
    ``coset_of[x]`` is the coset index of ``x``.
    """

    subgroup: Subgroup
    representatives: tuple[int, ...]
    coset_of: np.ndarray

    @property
    def count(self) -> int:
        return len(self.representatives)

    def translate(self, x: int, c: int) -> int:
        """Index of the coset ``x * (coset c)``."""
        g = self.subgroup.parent
        return int(self.coset_of[g.mul(x, self.representatives[c])])

    def members(self, c: int) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.coset_of == c).tolist())


def left_cosets(q: Subgroup) -> CosetDecomposition:
    g = q.parent
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for h in q.elements:
            coset_of[g.mul(x, h)] = idx
    dec = CosetDecomposition(q, tuple(reps), coset_of)
    assert dec.count * q.order == g.order
    return dec


def double_cosets(q: Subgroup, r: Subgroup) -> tuple[int, list[int]]:
    """Number of double cosets ``QxR`` and the least element of each."""
    if q.parent is not r.parent:
        raise GroupError("subgroups of different groups")
    g = q.parent
    seen = np.zeros(g.order, dtype=bool)
    reps = []
    for x in range(g.order):
        if seen[x]:
            continue
        reps.append(x)
        for a in q.elements:
            ax = g.mul(a, x)
            for b in r.elements:
                seen[g.mul(ax, b)] = True
    return len(reps), reps


def double_coset_sizes(q: Subgroup, r: Subgroup) -> list[int]:
    g = q.parent
    _, reps = double_cosets(q, r)
    return [len({g.mul(g.mul(a, x), b) for a in q.elements for b in r.elements}) for x in reps]


@dataclass(frozen=True)
class Orbit:
    cosets: tuple[int, ...]
    representative: int  # coset index
    stabilizer: Subgroup


def orbits(sub: Subgroup, q: Subgroup) -> list[Orbit]:
    """Orbits of ``sub`` on the left cosets ``G/q`` by left translation.

    Each orbit carries the stabilizer of its least coset.
    """
    if sub.parent is not q.parent:
        raise GroupError("subgroups of different groups")
    g = q.parent
    dec = left_cosets(q)
    done = np.zeros(dec.count, dtype=bool)
    out = []
    for c in range(dec.count):
        if done[c]:
            continue
        orb = sorted({dec.translate(h, c) for h in sub.elements})
        done[orb] = True
        stab = g.subgroup(h for h in sub.elements if dec.translate(h, c) == c)
        out.append(Orbit(tuple(orb), c, stab))
    return out


# -- constructors -----------------------------------------------------------


def _from_mul(elements, mul, gens, name, labels=None, bound=DEFAULT_ORDER_BOUND) -> FiniteGroup:
    elements = list(elements)
    if len(elements) > bound:
        raise OrderBoundError(f"group order {len(elements)} exceeds bound {bound}")
    pos = {e: i for i, e in enumerate(elements)}
    t = np.array([[pos[mul(a, b)] for b in elements] for a in elements], dtype=np.int64)
    return FiniteGroup(t, tuple(pos[x] for x in gens), labels, name)


def cyclic(m: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if m < 1:
        raise GroupError("cyclic group order must be positive")
    gens = [1] if m > 1 else []
    return _from_mul(range(m), lambda a, b: (a + b) % m, gens, f"C{m}", bound=bound)


def elementary_abelian(p: int, r: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if p < 2 or r < 0:
        raise GroupError("bad elementary abelian parameters")
    if p**r > bound:
        raise OrderBoundError(f"group order {p**r} exceeds bound {bound}")
    els = list(itertools.product(range(p), repeat=r))
    gens = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    name = f"C{p}^{r}" if r != 1 else f"C{p}"
    return _from_mul(
        els, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), gens, name, bound=bound
    )


def dihedral(n: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Dihedral group of order ``n`` (so ``dihedral(4)`` is the Klein four group)."""
    if n < 2 or n % 2:
        raise GroupError("dihedral group order must be even and at least 2")
    m = n // 2
    els = [(i, j) for j in range(2) for i in range(m)]

    def mul(a, b):
        (i, j), (k, l) = a, b
        return ((i + (k if j == 0 else -k)) % m, (j + l) % 2)

    gens = [(1 % m, 0), (0, 1)] if m > 1 else [(0, 1)]
    gens = [x for x in gens if x != (0, 0)]
    return _from_mul(els, mul, gens, f"D{n}", bound=bound)


_Q8 = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
_QUAT = {  # unit products of i, j, k
    ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
    ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
    ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
}


def _qmul(a: str, b: str) -> str:
    sign = (a.startswith("-")) ^ (b.startswith("-"))
    a, b = a.lstrip("-"), b.lstrip("-")
    if a == "1":
        r = b
    elif b == "1":
        r = a
    else:
        r = _QUAT[(a, b)]
    if r.startswith("-"):
        sign, r = not sign, r[1:]
    return ("-" if sign else "") + r


def quaternion8() -> FiniteGroup:
    return _from_mul(_Q8, _qmul, ["i", "j"], "Q8", labels=tuple(_Q8))


def _perm_group(gens: list[tuple[int, ...]], degree: int, name: str, bound: int) -> FiniteGroup:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = tuple(s[i] for i in x)  # s after x
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        raise OrderBoundError(f"permutation group exceeds order bound {bound}")
                    nxt.append(y)
        frontier = nxt
    els = sorted(seen)

    def mul(a, b):  # apply b, then a
        return tuple(a[i] for i in b)

    labels = tuple(format_permutation(e) for e in els)
    return _from_mul(els, mul, gens, name, labels=labels, bound=bound)


def symmetric(m: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    if m < 1:
        raise GroupError("symmetric group degree must be positive")
    gens = []
    if m > 1:
        gens.append(tuple(list(range(1, m)) + [0]))
        gens.append(tuple([1, 0] + list(range(2, m))))
    gens = list(dict.fromkeys(g for g in gens if g != tuple(range(m))))
    return _perm_group(gens, m, f"S{m}", bound)


def direct_product(g1: FiniteGroup, g2: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > bound:
        raise OrderBoundError(f"group order {n1 * n2} exceeds bound {bound}")
    t = (g1.cayley[:, None, :, None] * n2 + g2.cayley[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    gens = [a * n2 for a in g1.generators] + [b for b in g2.generators]
    labels = None
    if g1.labels is not None or g2.labels is not None:
        l1 = g1.labels or tuple(map(str, range(n1)))
        l2 = g2.labels or tuple(map(str, range(n2)))
        labels = tuple(f"({a},{b})" for a in l1 for b in l2)
    return FiniteGroup(t, tuple(gens), labels, f"{g1.name}x{g2.name}")


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutations(text: str) -> tuple[list[tuple[int, ...]], int]:
    """Parse cycle-notation generators; returns 0-based image tuples and the degree."""
    text = text.strip()
    if not text:
        raise GroupError("empty permutation list")
    cycles_per_gen = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk or _CYCLE.sub("", chunk).strip():
            raise GroupError(f"malformed permutation {chunk!r}")
        cycles = []
        for body in _CYCLE.findall(chunk):
            pts = body.split()
            if not all(t.isdigit() and int(t) >= 1 for t in pts):
                raise GroupError(f"bad point in cycle ({body})")
            pts = [int(t) - 1 for t in pts]
            if len(set(pts)) != len(pts):
                raise GroupError(f"repeated point in cycle ({body})")
            cycles.append(pts)
        cycles_per_gen.append(cycles)
    degree = max([1] + [x + 1 for cs in cycles_per_gen for c in cs for x in c])
    perms = []
    for cycles in cycles_per_gen:
        img = list(range(degree))
        seen: set[int] = set()
        for c in cycles:
            if seen & set(c):
                raise GroupError("cycles within one permutation must be disjoint")
            seen |= set(c)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        perms.append(tuple(img))
    return perms, degree


def format_permutation(img: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(img)):
        if start in seen or img[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = img[x]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def permutation_group(text: str, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    gens, degree = parse_permutations(text)
    ident = tuple(range(degree))
    gens = list(dict.fromkeys(g for g in gens if g != ident))
    return _perm_group(gens, degree, f"<{text.strip()}>", bound)


# -- block-theoretic helpers -------------------------------------------------


def centralizer(sub: Subgroup) -> Subgroup:
    g = sub.parent
    return g.subgroup(
        x for x in range(g.order) if all(g.mul(x, h) == g.mul(h, x) for h in sub.elements)
    )


def p_core(g: FiniteGroup, p: int) -> Subgroup:
    """``O_p(G)``: the intersection of all Sylow ``p``-subgroups."""
    s = sylow_subgroup(g, p)
    common = set(range(g.order))
    for x in range(g.order):
        common &= set(s.conjugate(x).elements)
    return g.subgroup(common)


def derived_subgroup(sub: Subgroup) -> Subgroup:
    g = sub.parent
    comms = {
        g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))) for a in sub.elements for b in sub.elements
    }
    return g.generated(comms)


def is_solvable(g: FiniteGroup) -> bool:
    s = g.whole
    while s.order > 1:
        d = derived_subgroup(s)
        if d.order == s.order:
            return False
        s = d
    return True


def single_block_certified(g: FiniteGroup, p: int) -> bool:
    """Sufficient test for kG being a single block.

    For p-solvable ``G`` with ``C_G(O_p(G)) <= O_p(G)`` the principal block is
    the only block.  Solvability is used as the (stronger) p-solvability test.
    """
    if g.order % p:
        return g.order == 1
    if not is_solvable(g):
        return False
    core = p_core(g, p)
    return centralizer(core) <= core
