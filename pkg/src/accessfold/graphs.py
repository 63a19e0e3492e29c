"""Graphs with involution, graphs of finite groups, paths and the Bass-Serre tree.

Directed edges are integers; an edge pair ``p`` consists of the directed
edges ``2p`` and ``2p + 1`` so the involution is ``e ^ 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InconclusiveError, Report
from .groups import (
    GroupMap,
    GroupTable,
    Subgroup,
    coset_rep,
    left_coset_reps,
    map_subgroup,
    minimal_generating_set,
    subgroup_intersection,
)


def inv(e: int) -> int:
    return e ^ 1


def pair(e: int) -> int:
    return e >> 1


@dataclass(frozen=True)
class Graph:
    """``alpha`` maps every directed edge to its initial vertex."""

    vertices: tuple[int, ...]
    alpha: Mapping[int, int]

    def __post_init__(self):
        for e, v in self.alpha.items():
            if e ^ 1 not in self.alpha:
                raise ValueError(f"edge {e} has no inverse")
            if v not in self.vertices:
                raise ValueError(f"edge {e} starts at unknown vertex {v}")

    @cached_property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.alpha))

    @cached_property
    def pairs(self) -> tuple[int, ...]:
        return tuple(sorted({e >> 1 for e in self.alpha}))

    def omega(self, e: int) -> int:
        return self.alpha[e ^ 1]

    @cached_property
    def star(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[self.alpha[e]].append(e)
        return {v: tuple(es) for v, es in out.items()}

    def valence(self, v: int) -> int:
        return len(self.star[v])

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for e in self.star[u]:
                    w = self.omega(e)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def spanning_tree(self, root: int) -> dict[int, int]:
        """BFS tree from ``root``: vertex -> directed edge arriving from its parent."""
        parent: dict[int, int] = {}
        seen = {root}
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for e in self.star[u]:
                    w = self.omega(e)
                    if w not in seen:
                        seen.add(w)
                        parent[w] = e
                        nxt.append(w)
            queue = nxt
        return parent


def betti_number(g: Graph) -> int:
    return len(g.pairs) - len(g.vertices) + len(g.components())


@dataclass(frozen=True, eq=False)
class GraphOfGroups:
    """Vertex groups, edge groups per edge pair, and alpha-boundary maps per directed edge."""

    graph: Graph
    vertex_groups: Mapping[int, GroupTable]
    edge_groups: Mapping[int, GroupTable]
    boundary: Mapping[int, GroupMap]
    vertex_names: Mapping[int, str] = field(default_factory=dict)
    edge_names: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        for e in self.graph.edges:
            m = self.boundary[e]
            if m.source is not self.edge_groups[e >> 1]:
                raise ValueError(f"boundary map of edge {e} has the wrong source")
            if m.target is not self.vertex_groups[self.graph.alpha[e]]:
                raise ValueError(f"boundary map of edge {e} has the wrong target")
            if not m.is_monomorphism():
                raise ValueError(f"boundary map of edge {e} is not a monomorphism")

    def vgroup(self, v: int) -> GroupTable:
        return self.vertex_groups[v]

    def egroup(self, e: int) -> GroupTable:
        return self.edge_groups[e >> 1]

    def alpha_map(self, e: int) -> GroupMap:
        return self.boundary[e]

    def omega_map(self, e: int) -> GroupMap:
        return self.boundary[e ^ 1]

    @cached_property
    def _images(self) -> dict[int, Subgroup]:
        return {e: self.boundary[e].image() for e in self.graph.edges}

    def alpha_image(self, e: int) -> Subgroup:
        """alpha_e(A_e) as a subgroup of A_alpha(e)."""
        return self._images[e]

    def omega_image(self, e: int) -> Subgroup:
        return self._images[e ^ 1]

    def vname(self, v: int) -> str:
        return self.vertex_names.get(v, f"v{v}")

    def ename(self, e: int) -> str:
        base = self.edge_names.get(e >> 1, f"e{e >> 1}")
        return base if e % 2 == 0 else base + "^-1"

    def edge_ref(self, name: str) -> int:
        """Resolve ``"e"`` or ``"e^-1"`` to a directed edge."""
        name = name.strip()
        bar = name.endswith("^-1")
        stem = name[:-3] if bar else name
        for p, n in self.edge_names.items():
            if n == stem:
                return 2 * p + (1 if bar else 0)
        if stem.startswith("e") and stem[1:].isdigit() and int(stem[1:]) in self.graph.pairs:
            return 2 * int(stem[1:]) + (1 if bar else 0)
        raise ValueError(f"unknown edge {name!r}")

    def vertex_ref(self, name) -> int:
        if isinstance(name, int) and name in self.graph.vertices:
            return name
        for v, n in self.vertex_names.items():
            if n == name:
                return v
        raise ValueError(f"unknown vertex {name!r}")


@dataclass(frozen=True)
class APath:
    """a_0, e_1, a_1, ..., e_s, a_s starting at ``start``.

    ``elements`` has one more entry than ``edges``; ``elements[i]`` lives in
    the group at the i-th vertex of the path.  The same container is used for
    paths in an A-graph, with its own vertex groups.
    """

    start: int
    elements: tuple[int, ...]
    edges: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.elements) != len(self.edges) + 1:
            raise ValueError("APath needs exactly one more element than edges")

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self, alpha: Mapping[int, int]) -> list[int]:
        out = [self.start]
        for e in self.edges:
            if alpha[e] != out[-1]:
                raise ValueError(f"edge {e} does not start at vertex {out[-1]}")
            out.append(alpha[e ^ 1])
        return out


def check_apath(A: GraphOfGroups, p: APath) -> list[int]:
    try:
        verts = p.vertices(A.graph.alpha)
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed path: {exc}") from None
    for x, v in zip(p.elements, verts):
        if not 0 <= x < A.vgroup(v).order:
            raise ValueError(f"element {x} not in vertex group of {A.vname(v)}")
    return verts


def concat(A: GraphOfGroups, p: APath, q: APath) -> APath:
    end = check_apath(A, p)[-1]
    if q.start != end:
        raise ValueError("paths are not composable")
    mid = A.vgroup(end).mul(p.elements[-1], q.elements[0])
    return APath(p.start, p.elements[:-1] + (mid,) + q.elements[1:], p.edges + q.edges)


def inverse_path(A: GraphOfGroups, p: APath) -> APath:
    verts = check_apath(A, p)
    els = tuple(A.vgroup(v).inv(x) for x, v in zip(reversed(p.elements), reversed(verts)))
    return APath(verts[-1], els, tuple(e ^ 1 for e in reversed(p.edges)))


def _pinch_at(A: GraphOfGroups, els: list[int], eds: list[int], i: int) -> bool:
    """Try to pinch edges i, i+1 around element i+1; mutates the lists."""
    e = eds[i]
    if eds[i + 1] != e ^ 1:
        return False
    c = A.omega_map(e).preimage(els[i + 1])
    if c is None:
        return False
    v = A.graph.alpha[e]
    merged = A.vgroup(v).mul(els[i], A.alpha_map(e)(c), els[i + 2])
    els[i:i + 3] = [merged]
    del eds[i:i + 2]
    return True


def reduce_apath(A: GraphOfGroups, p: APath) -> APath:
    """Remove pinches e, a, e^-1 (a in omega_e(A_e)), always the leftmost first."""
    check_apath(A, p)
    els, eds = list(p.elements), list(p.edges)
    i = 0
    while i < len(eds) - 1:
        if _pinch_at(A, els, eds, i):
            i = max(i - 1, 0)
        else:
            i += 1
    return APath(p.start, tuple(els), tuple(eds))


def is_reduced(A: GraphOfGroups, p: APath) -> bool:
    for i in range(len(p.edges) - 1):
        e = p.edges[i]
        if p.edges[i + 1] == e ^ 1 and p.elements[i + 1] in A.omega_image(e):
            return False
    return True


def canonicalize(A: GraphOfGroups, p: APath) -> APath:
    """Push edge-group factors rightwards so every a_i (i < s) is a minimal coset rep."""
    els = list(p.elements)
    for i, e in enumerate(p.edges):
        v = A.graph.alpha[e]
        r, x = coset_rep(els[i], A.alpha_image(e))
        c = A.alpha_map(e).preimage(x)
        els[i] = r
        w = A.graph.omega(e)
        els[i + 1] = A.vgroup(w).mul(A.omega_map(e)(c), els[i + 1])
    return APath(p.start, tuple(els), p.edges)


def normal_form(A: GraphOfGroups, p: APath) -> APath:
    """Unique representative of the groupoid element of ``p``."""
    return canonicalize(A, reduce_apath(A, p))


def is_loop(A: GraphOfGroups, p: APath) -> bool:
    return check_apath(A, p)[-1] == p.start


def cyclic_reduce(A: GraphOfGroups, p: APath) -> APath:
    """Reduce, then conjugate away cyclic pinches until none remain."""
    if not is_loop(A, p):
        raise ValueError("not a loop")
    q = reduce_apath(A, p)
    while len(q.edges) >= 2:
        e1, es = q.edges[0], q.edges[-1]
        v = q.start
        wrap = A.vgroup(v).mul(q.elements[-1], q.elements[0])
        if es != e1 ^ 1 or wrap not in A.omega_image(es):
            break
        # conjugate by a_0 e_1 so the wrap-around pinch becomes interior
        els = q.elements[1:-1] + (wrap, 0)
        eds = q.edges[1:] + (e1,)
        q = reduce_apath(A, APath(A.graph.omega(e1), els, eds))
    return q


def is_elliptic(A: GraphOfGroups, p: APath) -> bool:
    return len(cyclic_reduce(A, p).edges) == 0


# structural predicates ---------------------------------------------------

def _surjective(A: GraphOfGroups, e: int) -> bool:
    return A.egroup(e).order == A.vgroup(A.graph.alpha[e]).order


def is_weakly_reduced(A: GraphOfGroups) -> tuple[bool, int | None]:
    """False plus a witness vertex of valence 2 whose two boundary maps are onto.

    The two ends may belong to one loop edge (a circle of isomorphisms).
    """
    g = A.graph
    for v in g.vertices:
        star = g.star[v]
        if len(star) == 2:
            if all(_surjective(A, e) for e in star):
                return False, v
    return True, None


def is_minimal(A: GraphOfGroups) -> tuple[bool, int | None]:
    g = A.graph
    for v in g.vertices:
        star = g.star[v]
        if len(star) == 1 and _surjective(A, star[0]):
            return False, v
    return True, None


def reduced_complexity(A: GraphOfGroups) -> int:
    """Edge pairs left after un-subdividing every removable valence-2 vertex."""
    g = A.graph
    start = dict(g.alpha)
    surj = {e: _surjective(A, e) for e in g.edges}
    nxt = max(g.edges, default=-1) // 2 + 1
    verts = set(g.vertices)
    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            star = sorted(e for e, u in start.items() if u == v)
            if len(star) != 2 or star[0] >> 1 == star[1] >> 1:
                continue
            f1, f2 = star
            if not (surj[f1] and surj[f2]):
                continue
            # replace f1^-1 f2 by one new edge from omega(f1) to omega(f2)
            x, y = start[f1 ^ 1], start[f2 ^ 1]
            new = 2 * nxt
            nxt += 1
            start[new], start[new + 1] = x, y
            surj[new], surj[new + 1] = surj[f1 ^ 1], surj[f2 ^ 1]
            for e in (f1, f1 ^ 1, f2, f2 ^ 1):
                del start[e]
            verts.discard(v)
            changed = True
            break
    return len(start) // 2


reduced_complexity_cr = reduced_complexity


# acylindricity -----------------------------------------------------------

@dataclass(frozen=True)
class AcylindricityResult:
    """Smallest k with every segment of projective length > k having stabilizer <= C.

    ``witness`` is a segment (as an APath from a quotient vertex) realising k
    when k > 0 or when a vertex group itself exceeds C.
    """

    k: int
    C: int
    measure: str
    witness: APath | None = None
    explored: int = 0

    def as_dict(self) -> dict:
        return {"k": self.k, "C": self.C, "measure": self.measure, "explored": self.explored}


def _measure(kind: str, length: int, seen: frozenset) -> int:
    return length if kind == "length" else len(seen)


def _frame_step(A: GraphOfGroups, H: Subgroup, e: int, a: int) -> tuple[Subgroup, Subgroup]:
    """Intersect with the stabilizer of the tree edge a.e and move the frame across it.

    Returns (stabilizer in the old frame, same group in the frame at omega(e)).
    """
    amb = H.ambient
    Hs = subgroup_intersection(H, Subgroup(amb, frozenset(amb.conj(a, x) for x in A.alpha_image(e))))
    ainv = amb.inv(a)
    am, om = A.alpha_map(e), A.omega_map(e)
    moved = frozenset(om(am.preimage(amb.conj(ainv, x))) for x in Hs.elements)
    return Hs, Subgroup(A.vgroup(A.graph.omega(e)), moved)


def acylindricity(A: GraphOfGroups, C: int, depth_cap: int = 8,
                  measure: str = "length") -> AcylindricityResult:
    """Minimal k for which ``A`` is (k, C)-acylindrical.

    Segments are grown from every quotient vertex as reduced paths whose
    elements are left-coset representatives; a segment is extended only while
    its stabilizer has order > C.  ``measure`` is ``"length"`` (edges of the
    projected path, counted with multiplicity) or ``"distinct"`` (distinct
    edge pairs met).  Raises :class:`InconclusiveError` if a segment with
    large stabilizer exceeds ``depth_cap``.
    """
    if measure not in ("length", "distinct"):
        raise ValueError("measure must be 'length' or 'distinct'")
    g = A.graph
    reps = {e: left_coset_reps(A.alpha_image(e)) for e in g.edges}
    best = [0, None]
    explored = [0]
    # length mode: memo of the longest extension from a state; distinct: visited set
    memo: dict = {}
    on_stack: set = set()

    def ext(u: int, H: Subgroup, prev: int | None, seen: frozenset, length: int, path: APath):
        m = _measure(measure, length, seen)
        if m > depth_cap:
            raise InconclusiveError(
                f"segment with stabilizer of order {H.order} > C={C} exceeds depth cap {depth_cap}")
        if m > best[0]:
            best[0], best[1] = m, path
        key = (u, H.elements, prev) if measure == "length" else (u, H.elements, prev, seen)
        if measure == "length":
            if key in on_stack:
                raise InconclusiveError("segments with large stabilizer of unbounded length")
            if key in memo:
                if memo[key] + length > best[0]:
                    best[0], best[1] = memo[key] + length, None
                return memo[key]
        elif key in memo:
            return 0
        on_stack.add(key)
        longest = 0
        for e in g.star[u]:
            for a in reps[e]:
                if prev is not None and e == prev ^ 1 and a == 0:
                    continue  # backtrack
                explored[0] += 1
                Hs, moved = _frame_step(A, H, e, a)
                if Hs.order > H.order:
                    raise AssertionError("segment stabilizer grew under extension")
                if Hs.order <= C:
                    continue
                np = APath(path.start, path.elements[:-1] + (a, 0), path.edges + (e,))
                sub = ext(g.omega(e), moved, e, seen | {e >> 1}, length + 1, np)
                longest = max(longest, 1 + sub)
        on_stack.discard(key)
        memo[key] = longest
        return longest

    for v in g.vertices:
        H = A.vgroup(v).whole()
        if H.order <= C:
            continue
        if best[1] is None:
            best[1] = APath(v, (0,))
        ext(v, H, None, frozenset(), 0, APath(v, (0,)))
    return AcylindricityResult(best[0], C, measure, best[1], explored[0])


def tree_ball_acylindricity(A: GraphOfGroups, C: int, depth: int = 6,
                            measure: str = "length") -> int:
    """Brute-force oracle: largest measure of a segment with stabilizer > C.

    Enumerates every tree vertex within ``depth`` of each quotient vertex as a
    canonical coset word, and computes the stabilizer of the segment from the
    base by testing every element of the base vertex group for fixing the far
    endpoint.  No pruning.
    """
    g = A.graph
    reps = {e: left_coset_reps(A.alpha_image(e)) for e in g.edges}

    def act(h: int, word: tuple) -> tuple:
        els, eds = list(word[0]), word[1]
        if not eds:
            return word
        els[0] = A.vgroup(g.alpha[eds[0]]).mul(h, els[0])
        carry = 0
        for i, e in enumerate(eds):
            grp = A.vgroup(g.alpha[e])
            x = grp.mul(carry, els[i]) if i else els[0]
            r, rest = coset_rep(x, A.alpha_image(e))
            els[i] = r
            carry = A.omega_map(e)(A.alpha_map(e).preimage(rest))
        return (tuple(els), eds)

    best = 0
    for v in g.vertices:
        G = A.vgroup(v)
        level = [((), (), v)]
        for length in range(1, depth + 1):
            nxt = []
            for els, eds, u in level:
                for e in g.star[u]:
                    for a in reps[e]:
                        if eds and e == eds[-1] ^ 1 and a == 0:
                            continue
                        nxt.append((els + (a,), eds + (e,), g.omega(e)))
            for els, eds, u in nxt:
                word = (els, eds)
                stab = sum(1 for h in G.elements() if act(h, word) == word)
                if stab > C:
                    m = length if measure == "length" else len({e >> 1 for e in eds})
                    best = max(best, m)
            level = nxt
    return best


# generating tuples -------------------------------------------------------

def tree_path(A: GraphOfGroups, parent: Mapping[int, int], root: int, v: int) -> APath:
    eds = []
    while v != root:
        e = parent[v]
        eds.append(e)
        v = A.graph.alpha[e]
    eds.reverse()
    return APath(root, (0,) * (len(eds) + 1), tuple(eds))


def default_generating_tuple(A: GraphOfGroups, base: int | None = None) -> list[tuple[APath, str]]:
    """Vertex-group generators carried to ``base`` along a BFS tree, then one
    stable letter per edge pair outside the tree.  Each loop is tagged
    ``"elliptic"`` or ``"hyperbolic"``."""
    g = A.graph
    base = g.vertices[0] if base is None else base
    parent = A.graph.spanning_tree(base)
    out: list[tuple[APath, str]] = []
    order = [base] + sorted(v for v in parent)
    for v in order:
        p = tree_path(A, parent, base, v)
        back = inverse_path(A, p)
        for x in minimal_generating_set(A.vgroup(v).whole()):
            loop = concat(A, concat(A, p, APath(v, (x,))), back)
            out.append((loop, "elliptic"))
    tree_edges = {e >> 1 for e in parent.values()}
    for pr in g.pairs:
        if pr in tree_edges:
            continue
        e = 2 * pr
        x, y = g.alpha[e], g.omega(e)
        loop = concat(A, concat(A, tree_path(A, parent, base, x), APath(x, (0, 0), (e,))),
                      inverse_path(A, tree_path(A, parent, base, y)))
        out.append((loop, "elliptic" if is_elliptic(A, loop) else "hyperbolic"))
    return out


def format_apath(A: GraphOfGroups, p: APath) -> str:
    verts = p.vertices(A.graph.alpha)
    parts = [A.vgroup(verts[0]).name(p.elements[0])]
    for i, e in enumerate(p.edges):
        parts += [A.ename(e), A.vgroup(verts[i + 1]).name(p.elements[i + 1])]
    return " ".join(parts)


def to_dot(A: GraphOfGroups, name: str = "A") -> str:
    lines = [f"graph {name} {{"]
    for v in A.graph.vertices:
        lines.append(f'  v{v} [label="{A.vname(v)} |{A.vgroup(v).order}|"];')
    for p in A.graph.pairs:
        e = 2 * p
        lines.append(f'  v{A.graph.alpha[e]} -- v{A.graph.omega(e)} '
                     f'[label="{A.ename(e)} |{A.egroup(e).order}|"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
