"""Finite groups as multiplication tables, with subgroups and homomorphisms.

Elements are integer indices into the table; the identity is always index 0.
Everything here is immutable and small (order up to a couple of hundred).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import Report


def _perm_name(perm: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        cycles.append("(" + ",".join(str(i + 1) for i in cyc) + ")")
    return "".join(cycles) or "()"


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its full Cayley table.

    ``product[x][y]`` is the index of ``x*y``.  Use the ``from_*``
    constructors; they normalise the identity to index 0 and fill in inverses.
    """

    product: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    names: tuple[str, ...]
    label: str = ""
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @property
    def order(self) -> int:
        return len(self.product)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.product[r][x]
        return r

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.product[self.product[g][x]][self.inverse[g]]

    def name(self, x: int) -> str:
        return self.names[x]

    def element(self, ref) -> int:
        """Resolve an element given by index or by display name."""
        if isinstance(ref, bool):
            raise ValueError(f"bad element reference {ref!r}")
        if isinstance(ref, int):
            if not 0 <= ref < self.order:
                raise ValueError(f"element index {ref} out of range for {self.label or 'group'}")
            return ref
        if isinstance(ref, str):
            key = ref.replace(" ", "")
            if key in self._index:
                return self._index[key]
        raise ValueError(f"unknown element {ref!r} in {self.label or 'group'}")

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = self.product[y][x]
            n += 1
        return n

    def __repr__(self):
        return f"GroupTable({self.label or '?'}, order={self.order})"

    # constructors ---------------------------------------------------------

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                   label: str = "", validate: bool = True) -> "GroupTable":
        n = len(table)
        rows = [list(r) for r in table]
        if validate:
            rep = verify_group_axioms(rows)
            if not rep.ok:
                raise ValueError(f"{label or 'table'}: {rep.message}")
        ident = next(i for i in range(n) if all(rows[i][j] == j for j in range(n)))
        # relabel so that the identity sits at index 0
        perm = list(range(n))
        perm[0], perm[ident] = perm[ident], perm[0]
        new_of_old = {old: new for new, old in enumerate(perm)}
        prod = tuple(
            tuple(new_of_old[rows[perm[i]][perm[j]]] for j in range(n)) for i in range(n)
        )
        if names is None:
            names = ["e"] + [f"g{i}" for i in range(1, n)]
            nm = tuple(names)
        else:
            nm = tuple(str(names[perm[i]]).replace(" ", "") for i in range(n))
        inverse = tuple(next(j for j in range(n) if prod[i][j] == 0) for i in range(n))
        return cls(prod, inverse, nm, label)

    @classmethod
    def cyclic(cls, n: int, label: str = "") -> "GroupTable":
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        names = ["1", "a"] + [f"a^{i}" for i in range(2, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls.from_table(table, names[:n], label or f"C{n}", validate=False)

    @classmethod
    def from_permutations(cls, gens: Iterable[Sequence[int]], label: str = "") -> "GroupTable":
        """Generate the permutation group spanned by ``gens`` (0-based image lists)."""
        gens = [tuple(g) for g in gens]
        degree = max((len(g) for g in gens), default=1)
        for g in gens:
            if sorted(g) != list(range(len(g))):
                raise ValueError(f"not a permutation: {list(g)}")
        gens = [g + tuple(range(len(g), degree)) for g in gens]
        ident = tuple(range(degree))
        elems = [ident]
        index = {ident: 0}
        i = 0
        while i < len(elems):
            p = elems[i]
            for g in gens:
                q = tuple(g[p[k]] for k in range(degree))  # apply p, then g
                if q not in index:
                    index[q] = len(elems)
                    elems.append(q)
            i += 1
        # x*y means "first y, then x" so that products read like composition
        table = [[index[tuple(x[y[k]] for k in range(degree))] for y in elems] for x in elems]
        return cls.from_table(table, [_perm_name(p) for p in elems], label, validate=False)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset({0}))

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))


def trivial_group(label: str = "1") -> GroupTable:
    return GroupTable.from_table([[0]], ["1"], label, validate=False)


def verify_group_axioms(t) -> Report:
    """Check closure, identity, inverses and associativity of a table.

    Accepts a :class:`GroupTable` or a raw square list of lists.  The report
    names the first violation found.  Raises ``ValueError`` if the table is
    not square.
    """
    rows = [list(r) for r in (t.product if isinstance(t, GroupTable) else t)]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("multiplication table is not square")
    for i in range(n):
        for j in range(n):
            if not (isinstance(rows[i][j], int) and 0 <= rows[i][j] < n):
                return Report(False, "closure", (i, j), f"product[{i}][{j}] out of range")
    idents = [i for i in range(n) if all(rows[i][j] == j and rows[j][i] == j for j in range(n))]
    if not idents:
        return Report(False, "identity", None, "no two-sided identity")
    e = idents[0]
    for x in range(n):
        if not any(rows[x][y] == e and rows[y][x] == e for y in range(n)):
            return Report(False, "inverse", x, f"element {x} has no inverse")
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            xy = rx[y]
            ry = rows[y]
            rxy = rows[xy]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    return Report(False, "associativity", (x, y, z),
                                  f"(x*y)*z != x*(y*z) for (x, y, z) = {(x, y, z)}")
    return Report(True)


@dataclass(frozen=True)
class Subgroup:
    ambient: GroupTable
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def __le__(self, other: "Subgroup") -> bool:
        return self.ambient is other.ambient and self.elements <= other.elements

    def __lt__(self, other: "Subgroup") -> bool:
        return self.ambient is other.ambient and self.elements < other.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        names = ", ".join(self.ambient.name(x) for x in sorted(self.elements)[:6])
        more = ", ..." if self.order > 6 else ""
        return f"Subgroup(<{names}{more}>, order={self.order})"

    def is_closed(self) -> bool:
        g = self.ambient
        return 0 in self.elements and all(
            g.product[x][y] in self.elements for x in self.elements for y in self.elements
        )


def subgroup_closure(ambient: GroupTable, gens: Iterable[int]) -> Subgroup:
    gens = sorted({ambient.element(x) for x in gens} - {0})
    elems = {0}
    frontier = [0]
    prod = ambient.product
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = prod[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(ambient, frozenset(elems))


def join(*subgroups: Subgroup, extra: Iterable[int] = ()) -> Subgroup:
    ambient = subgroups[0].ambient
    gens = set(extra)
    for h in subgroups:
        if h.ambient is not ambient:
            raise ValueError("subgroups live in different ambient groups")
        gens |= h.elements
    return subgroup_closure(ambient, gens)


def subgroup_intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.ambient is not b.ambient:
        raise ValueError("subgroups live in different ambient groups")
    return Subgroup(a.ambient, a.elements & b.elements)


def conjugate_subgroup(h: Subgroup, g: int) -> Subgroup:
    """g H g^-1"""
    amb = h.ambient
    return Subgroup(amb, frozenset(amb.conj(g, x) for x in h.elements))


def left_coset_reps(h: Subgroup) -> list[int]:
    """Smallest element of every left coset gH, in increasing order."""
    amb = h.ambient
    seen: set[int] = set()
    reps = []
    for g in range(amb.order):
        if g in seen:
            continue
        reps.append(g)
        seen.update(amb.product[g][x] for x in h.elements)
    return reps


def coset_rep(g: int, h: Subgroup) -> tuple[int, int]:
    """Split g = r*x with r the canonical (minimal) rep of gH and x in H."""
    amb = h.ambient
    r = min(amb.product[g][x] for x in h.elements)
    return r, amb.mul(amb.inv(r), g)


def all_subgroups(g: GroupTable) -> list[Subgroup]:
    """Every subgroup, found as joins of cyclic subgroups (fine for small orders)."""
    cyclic = {subgroup_closure(g, [x]).elements for x in g.elements()}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for a in frontier:
            for c in cyclic:
                if c <= a:
                    continue
                j = subgroup_closure(g, a | c).elements
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return sorted((Subgroup(g, s) for s in found), key=lambda s: (s.order, sorted(s.elements)))


def minimal_generating_set(h: Subgroup, exhaustive_up_to: int = 2) -> list[int]:
    """A smallest generating set when one of size <= exhaustive_up_to exists, else greedy."""
    if h.order == 1:
        return []
    elems = sorted(h.elements - {0})
    for size in range(1, exhaustive_up_to + 1):
        for combo in combinations(elems, size):
            if subgroup_closure(h.ambient, combo).order == h.order:
                return list(combo)
    gens: list[int] = []
    cur = subgroup_closure(h.ambient, [])
    for x in elems:
        if x not in cur:
            gens.append(x)
            cur = subgroup_closure(h.ambient, gens)
            if cur.order == h.order:
                break
    return gens


@dataclass(frozen=True, eq=False)
class GroupMap:
    source: GroupTable
    target: GroupTable
    images: tuple[int, ...]
    _pre: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise ValueError("image table has wrong length")
        pre: dict[int, int] = {}
        for x, y in enumerate(self.images):
            pre.setdefault(y, x)
        object.__setattr__(self, "_pre", pre)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def preimage(self, y: int) -> int | None:
        return self._pre.get(y)

    def is_homomorphism(self) -> bool:
        s, t, im = self.source, self.target, self.images
        if im[0] != 0:
            return False
        return all(
            im[s.product[x][y]] == t.product[im[x]][im[y]]
            for x in range(s.order) for y in range(s.order)
        )

    def is_monomorphism(self) -> bool:
        return len(set(self.images)) == len(self.images) and self.is_homomorphism()

    def image(self) -> Subgroup:
        return Subgroup(self.target, frozenset(self.images))

    @classmethod
    def identity(cls, g: GroupTable) -> "GroupMap":
        return cls(g, g, tuple(range(g.order)))

    @classmethod
    def from_generators(cls, source: GroupTable, target: GroupTable,
                        gen_images: Mapping[int, int]) -> "GroupMap":
        """Extend an assignment on generators to a homomorphism.

        Raises ``ValueError`` if the generators do not generate the source or
        the assignment does not extend consistently.
        """
        images: dict[int, int] = {0: 0}
        gens = [(source.element(a), target.element(b)) for a, b in gen_images.items()]
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in gens:
                    y = source.product[x][g]
                    yi = target.product[images[x]][gi]
                    if y in images:
                        if images[y] != yi:
                            raise ValueError("generator assignment does not extend to a homomorphism")
                    else:
                        images[y] = yi
                        nxt.append(y)
            frontier = nxt
        if len(images) != source.order:
            raise ValueError("given elements do not generate the source group")
        m = cls(source, target, tuple(images[i] for i in range(source.order)))
        if not m.is_homomorphism():
            raise ValueError("generator assignment does not extend to a homomorphism")
        return m


def map_subgroup(m: GroupMap, h: Subgroup) -> Subgroup:
    if h.ambient is not m.source:
        raise ValueError("subgroup is not in the map's source")
    return Subgroup(m.target, frozenset(m.images[x] for x in h.elements))


def is_monomorphism(m: GroupMap) -> bool:
    return m.is_monomorphism()


def compose(m1: GroupMap, m2: GroupMap) -> GroupMap:
    """The map x -> m2(m1(x))."""
    if m1.target is not m2.source:
        raise ValueError("maps are not composable")
    return GroupMap(m1.source, m2.target, tuple(m2.images[y] for y in m1.images))
