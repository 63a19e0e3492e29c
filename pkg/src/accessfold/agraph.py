"""A-graphs over a graph of finite groups and the fold engine.

An :class:`AGraph` stores, per directed edge ``f``, only the label ``f_alpha``;
``f_omega`` is ``((f^-1)_alpha)^-1``.  Vertex and edge ids are stable across
folds: a fold deletes the absorbed edge pair / vertex and everything else
keeps its id, so the induced graph map is identity off the fold.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import EngineInvariantError, Report, UnsupportedFoldShape
from .graphs import APath, Graph, GraphOfGroups, normal_form, reduce_apath
from .groups import (
    GroupMap,
    GroupTable,
    Subgroup,
    conjugate_subgroup,
    join,
    minimal_generating_set,
    subgroup_closure,
)


@dataclass
class AGraph:
    target: GraphOfGroups
    alpha: dict[int, int]          # directed edge -> initial vertex
    vmap: dict[int, int]           # vertex -> vertex of A
    emap: dict[int, int]           # directed edge -> directed edge of A
    vgroup: dict[int, Subgroup]    # B_u <= A_[u]
    egroup: dict[int, Subgroup]    # edge pair -> B_f <= A_[f]
    label: dict[int, int]          # directed edge -> f_alpha in A_[alpha(f)]
    base: int = 0

    def copy(self) -> "AGraph":
        return AGraph(self.target, dict(self.alpha), dict(self.vmap), dict(self.emap),
                      dict(self.vgroup), dict(self.egroup), dict(self.label), self.base)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.vmap)

    @property
    def edges(self) -> list[int]:
        return sorted(self.alpha)

    @property
    def pairs(self) -> list[int]:
        return sorted({f >> 1 for f in self.alpha})

    def omega(self, f: int) -> int:
        return self.alpha[f ^ 1]

    def star(self, u: int) -> list[int]:
        return [f for f in self.edges if self.alpha[f] == u]

    def ambient_v(self, u: int) -> GroupTable:
        return self.target.vgroup(self.vmap[u])

    def ambient_e(self, f: int) -> GroupTable:
        return self.target.egroup(self.emap[f])

    def f_alpha(self, f: int) -> int:
        return self.label[f]

    def f_omega(self, f: int) -> int:
        return self.ambient_v(self.omega(f)).inv(self.label[f ^ 1])

    def bf(self, f: int) -> Subgroup:
        return self.egroup[f >> 1]

    def boundary_image(self, f: int, g: int) -> int:
        """alpha_f(g) of the associated graph of groups."""
        return self.ambient_v(self.alpha[f]).conj(self.label[f], self.target.alpha_map(self.emap[f])(g))

    def graph(self) -> Graph:
        return Graph(tuple(self.vertices), dict(self.alpha))

    def is_loop(self, f: int) -> bool:
        return self.alpha[f] == self.omega(f)

    def orders(self) -> dict:
        return {
            "vertices": {str(u): self.vgroup[u].order for u in self.vertices},
            "edges": {str(p): self.egroup[p].order for p in self.pairs},
        }


def validate_agraph(b: AGraph) -> Report:
    A = b.target
    for f in b.edges:
        if f ^ 1 not in b.alpha:
            return Report(False, "graph", f, f"edge {f} has no inverse")
        e = b.emap.get(f)
        if e is None or b.emap.get(f ^ 1) != e ^ 1:
            return Report(False, "condition 1", f, "edge map does not commute with inversion")
        if A.graph.alpha[e] != b.vmap[b.alpha[f]]:
            return Report(False, "condition 1", f, "edge map does not commute with alpha")
    for u in b.vertices:
        H = b.vgroup[u]
        if H.ambient is not b.ambient_v(u) or not H.is_closed():
            return Report(False, "condition 2", u, f"B_{u} is not a subgroup of A_[{u}]")
    for p in b.pairs:
        H = b.egroup.get(p)
        if H is None or H.ambient is not b.ambient_e(2 * p) or not H.is_closed():
            return Report(False, "condition 3", 2 * p, f"B_f of pair {p} is not a subgroup of A_[f]")
    for f in b.edges:
        if not 0 <= b.label[f] < b.ambient_v(b.alpha[f]).order:
            return Report(False, "condition 4", f, f"label of {f} outside A_[alpha(f)]")
    for f in b.edges:
        Bx = b.vgroup[b.alpha[f]]
        for g in b.bf(f).elements:
            if b.boundary_image(f, g) not in Bx:
                return Report(False, "condition 5", f,
                              f"f_alpha alpha(B_f) f_alpha^-1 not inside B_alpha(f) for edge {f}")
    return Report(True)


def associated_graph_of_groups(b: AGraph) -> GraphOfGroups:
    rep = validate_agraph(b)
    if not rep:
        raise EngineInvariantError(f"invalid A-graph: {rep.message}")
    vg, eg, bd = {}, {}, {}
    vtab = {}
    for u in b.vertices:
        H = b.vgroup[u]
        els = sorted(H.elements)
        pos = {x: i for i, x in enumerate(els)}
        amb = H.ambient
        vtab[u] = (els, pos)
        vg[u] = GroupTable.from_table([[pos[amb.mul(x, y)] for y in els] for x in els],
                                      [amb.name(x) for x in els], f"B{u}", validate=False)
    etab = {}
    for p in b.pairs:
        H = b.egroup[p]
        els = sorted(H.elements)
        pos = {x: i for i, x in enumerate(els)}
        amb = H.ambient
        etab[p] = (els, pos)
        eg[p] = GroupTable.from_table([[pos[amb.mul(x, y)] for y in els] for x in els],
                                      [amb.name(x) for x in els], f"B_e{p}", validate=False)
    for f in b.edges:
        els, _ = etab[f >> 1]
        _, vpos = vtab[b.alpha[f]]
        bd[f] = GroupMap(eg[f >> 1], vg[b.alpha[f]], tuple(vpos[b.boundary_image(f, g)] for g in els))
        if not bd[f].is_monomorphism():
            raise EngineInvariantError(f"associated boundary map of {f} is not a monomorphism")
    return GraphOfGroups(b.graph(), vg, eg, bd)


# constructors -----------------------------------------------------------

def trivial_agraph(A: GraphOfGroups, base: int | None = None) -> AGraph:
    g = A.graph
    return AGraph(
        A, dict(g.alpha), {v: v for v in g.vertices}, {e: e for e in g.edges},
        {v: A.vgroup(v).whole() for v in g.vertices},
        {p: A.egroup(2 * p).whole() for p in g.pairs},
        {e: 0 for e in g.edges},
        g.vertices[0] if base is None else base,
    )


@dataclass
class Wedge:
    agraph: AGraph
    circles: list[list[int]]       # directed edges of each circle, in order from the base
    elliptic: list[int]            # indices into S that went into the base vertex group


def build_wedge(A: GraphOfGroups, S: Iterable[APath]) -> Wedge:
    """The S-wedge: base vertex group generated by entries that reduce into the
    base vertex group, one subdivided circle per remaining entry."""
    S = list(S)
    if not S:
        raise ValueError("empty generating tuple")
    v0 = S[0].start
    G = A.graph
    alpha: dict[int, int] = {}
    vmap = {0: v0}
    emap: dict[int, int] = {}
    label: dict[int, int] = {}
    ell_elems: list[int] = []
    ell_idx: list[int] = []
    circles: list[list[int]] = []
    nv, ne = 1, 0
    for i, p in enumerate(S):
        if p.start != v0:
            raise ValueError(f"entry {i} does not start at the common base vertex")
        verts = p.vertices(G.alpha)
        if verts[-1] != v0:
            raise ValueError(f"entry {i} is not a loop")
        q = reduce_apath(A, p)
        if not q.edges:
            ell_elems.append(q.elements[0])
            ell_idx.append(i)
            continue
        qv = q.vertices(G.alpha)
        s = len(q.edges)
        circle = []
        prev = 0
        for j, e in enumerate(q.edges):
            if j == s - 1:
                nxt = 0
            else:
                nxt = nv
                vmap[nxt] = qv[j + 1]
                nv += 1
            f = 2 * ne
            ne += 1
            alpha[f], alpha[f + 1] = prev, nxt
            emap[f], emap[f + 1] = e, e ^ 1
            # labels (a_{j}, e, 1) except the last edge which carries a_s
            label[f] = q.elements[j]
            last = q.elements[s] if j == s - 1 else 0
            label[f + 1] = A.vgroup(qv[j + 1]).inv(last)
            circle.append(f)
            prev = nxt
        circles.append(circle)
    vgroup = {u: A.vgroup(v).trivial_subgroup() for u, v in vmap.items()}
    vgroup[0] = subgroup_closure(A.vgroup(v0), ell_elems)
    egroup = {f >> 1: A.egroup(emap[f]).trivial_subgroup() for f in alpha if f % 2 == 0}
    b = AGraph(A, alpha, vmap, emap, vgroup, egroup, label, 0)
    return Wedge(b, circles, ell_idx)


# moves ------------------------------------------------------------------

@dataclass(frozen=True)
class FoldMove:
    """A fully specified fold.

    For IA/IIIA the normalisation is applied to ``f2`` before identifying it
    with ``f1``: first ``f2_alpha -> adjust * f2_alpha`` (adjust in B_x), then
    the edge move by ``edge_c`` (f2_alpha -> f2_alpha alpha(c)), then for IA
    the vertex ``conj_vertex`` is conjugated by ``conj_h`` to align the
    omega-labels.  For IIA, ``g`` is added to B_f1.
    """

    kind: str
    f1: int
    f2: int | None = None
    g: int | None = None
    adjust: int = 0
    edge_c: int = 0
    conj_vertex: int | None = None
    conj_h: int = 0

    @property
    def orientation(self) -> str:
        """'A' when the leading edge is a positively oriented edge, else 'B' (the inverse side)."""
        return "A" if self.f1 % 2 == 0 else "B"

    def as_dict(self) -> dict:
        d = {"kind": self.kind, "orientation": self.orientation, "f1": self.f1}
        if self.f2 is not None:
            d.update(f2=self.f2, adjust=self.adjust, edge_c=self.edge_c)
        if self.g is not None:
            d["g"] = self.g
        if self.conj_vertex is not None:
            d.update(conj_vertex=self.conj_vertex, conj_h=self.conj_h)
        return d


def apply_aux_move(b: AGraph, f: int, c: int) -> AGraph:
    """f_alpha -> f_alpha alpha(c), f_omega -> omega(c)^-1 f_omega, B_f -> c^-1 B_f c."""
    Ae = b.ambient_e(f)
    if not 0 <= c < Ae.order:
        raise ValueError("element outside the edge group")
    if c == 0:
        return b
    out = b.copy()
    e = b.emap[f]
    A = b.target
    x, y = b.alpha[f], b.omega(f)
    out.label[f] = b.ambient_v(x).mul(b.label[f], A.alpha_map(e)(c))
    # (f^-1)_alpha = f_omega^-1 -> f_omega^-1 omega(c)
    out.label[f ^ 1] = b.ambient_v(y).mul(b.label[f ^ 1], A.omega_map(e)(c))
    out.egroup[f >> 1] = conjugate_subgroup(b.bf(f), Ae.inv(c))
    return out


def apply_vertex_adjust(b: AGraph, f: int, beta: int) -> AGraph:
    """f_alpha -> beta f_alpha for beta in B_alpha(f)."""
    if beta not in b.vgroup[b.alpha[f]]:
        raise ValueError("adjusting element is not in B_alpha(f)")
    out = b.copy()
    out.label[f] = b.ambient_v(b.alpha[f]).mul(beta, b.label[f])
    return out


def apply_vertex_conjugation(b: AGraph, u: int, h: int) -> AGraph:
    """B_u -> h B_u h^-1 and f_alpha -> h f_alpha for every f starting at u."""
    G = b.ambient_v(u)
    if not 0 <= h < G.order:
        raise ValueError("element outside A_[u]")
    out = b.copy()
    out.vgroup[u] = conjugate_subgroup(b.vgroup[u], h)
    for f in b.edges:
        if b.alpha[f] == u:
            out.label[f] = G.mul(h, b.label[f])
    return out


# fold search ------------------------------------------------------------

def _type_two(b: AGraph, allowed) -> FoldMove | None:
    A = b.target
    for f in b.edges:
        if allowed is not None and f >> 1 not in allowed:
            continue
        e = b.emap[f]
        Bf = b.bf(f)
        Bx = b.vgroup[b.alpha[f]]
        for g in range(b.ambient_e(f).order):
            if g in Bf:
                continue
            if b.ambient_v(b.alpha[f]).conj(b.label[f], A.alpha_map(e)(g)) in Bx:
                return FoldMove("IIA", f, g=g)
    return None


def _coset_witness(b: AGraph, f1: int, f2: int) -> tuple[int, int] | None:
    """(beta, c) with f2_alpha = beta^-1 f1_alpha alpha(c)^-1 ... normalised so that
    beta * f2_alpha * alpha(c) = f1_alpha; None if f2_alpha is not in B_x f1_alpha alpha(A_e)."""
    A = b.target
    x = b.alpha[f1]
    G = b.ambient_v(x)
    am = A.alpha_map(b.emap[f1])
    a1, a2 = b.label[f1], b.label[f2]
    for beta in sorted(b.vgroup[x].elements):
        # want beta a2 alpha(c) = a1  <=>  alpha(c) = a2^-1 beta^-1 a1
        t = G.mul(G.inv(a2), G.inv(beta), a1)
        c = am.preimage(t)
        if c is not None:
            return beta, c
    return None


def _type_one_three(b: AGraph, allowed) -> FoldMove | None:
    loop_candidate = None
    for x in b.vertices:
        star = [f for f in b.star(x) if allowed is None or f >> 1 in allowed]
        for i, f1 in enumerate(star):
            for f2 in star[i + 1:]:
                if b.emap[f1] != b.emap[f2] or f1 >> 1 == f2 >> 1:
                    continue
                if b.is_loop(f1) or b.is_loop(f2):
                    if loop_candidate is None and _coset_witness(b, f1, f2) is not None:
                        loop_candidate = (f1, f2)
                    continue
                w = _coset_witness(b, f1, f2)
                if w is None:
                    continue
                beta, c = w
                y, z = b.omega(f1), b.omega(f2)
                if y == z:
                    return FoldMove("IIIA", f1, f2, adjust=beta, edge_c=c)
                return _plan_ia(b, f1, f2, beta, c)
    if loop_candidate is not None:
        raise UnsupportedFoldShape(
            f"edges {loop_candidate[0]} and {loop_candidate[1]} can only be folded through a loop")
    return None


def _plan_ia(b: AGraph, f1: int, f2: int, beta: int, c: int) -> FoldMove:
    """Choose which far endpoint to conjugate so that the omega-labels agree."""
    x = b.alpha[f1]
    y, z = b.omega(f1), b.omega(f2)
    tmp = apply_aux_move(apply_vertex_adjust(b, f2, beta), f2, c)
    b1, b2 = tmp.f_omega(f1), tmp.f_omega(f2)
    G = b.ambient_v(y)
    if b1 == b2:
        return FoldMove("IA", f1, f2, adjust=beta, edge_c=c)
    # conjugating z by h turns f2_omega into f2_omega h^-1; pick h = b1^-1 b2
    if z != x and z != b.base:
        return FoldMove("IA", f1, f2, adjust=beta, edge_c=c, conj_vertex=z, conj_h=G.mul(G.inv(b1), b2))
    if y != x and y != b.base:
        return FoldMove("IA", f1, f2, adjust=beta, edge_c=c, conj_vertex=y, conj_h=G.mul(G.inv(b2), b1))
    raise UnsupportedFoldShape(
        f"IA fold of edges {f1}, {f2} needs a conjugation at the base or at a loop vertex")


def find_fold(b: AGraph, allowed: Iterable[int] | None = None) -> FoldMove | None:
    """Next fold, type II first, lowest ids first; ``None`` means folded.

    ``allowed`` restricts the search to moves whose edges all lie in the given
    set of edge pairs.
    """
    allowed = None if allowed is None else set(allowed)
    return _type_two(b, allowed) or _type_one_three(b, allowed)


def is_folded(b: AGraph) -> bool:
    return find_fold(b) is None


# applying folds ---------------------------------------------------------

@dataclass
class FoldMap:
    """The graph map B -> B' induced by a fold (identity off the fold)."""

    vertices: dict[int, int] = field(default_factory=dict)
    edges: dict[int, int] = field(default_factory=dict)

    def v(self, u: int) -> int:
        return self.vertices.get(u, u)

    def e(self, f: int) -> int:
        return self.edges.get(f, f)

    def pair(self, p: int) -> int:
        return self.e(2 * p) >> 1


def normalize(b: AGraph, m: FoldMove) -> AGraph:
    if m.kind == "IIA":
        return b
    out = apply_vertex_adjust(b, m.f2, m.adjust)
    out = apply_aux_move(out, m.f2, m.edge_c)
    if m.conj_vertex is not None:
        out = apply_vertex_conjugation(out, m.conj_vertex, m.conj_h)
    return out


def apply_fold(b: AGraph, m: FoldMove) -> tuple[AGraph, FoldMap]:
    pi = FoldMap()
    if m.kind == "IIA":
        f, g = m.f1, m.g
        x, y = b.alpha[f], b.omega(f)
        if g in b.bf(f):
            raise ValueError("IIA element already in B_f")
        if b.boundary_image(f, g) not in b.vgroup[x]:
            raise ValueError("IIA fold is not applicable")
        out = b.copy()
        out.egroup[f >> 1] = join(b.bf(f), extra=[g])
        Gy = b.ambient_v(y)
        bb = b.f_omega(f)
        w = Gy.conj(Gy.inv(bb), b.target.omega_map(b.emap[f])(g))
        out.vgroup[y] = join(out.vgroup[y], extra=[w])
        return out, pi
    f1, f2 = m.f1, m.f2
    if b.alpha[f1] != b.alpha[f2] or b.emap[f1] != b.emap[f2] or f1 >> 1 == f2 >> 1:
        raise ValueError("fold edges must be distinct pairs with a common start and image")
    nb = normalize(b, m)
    if nb.label[f1] != nb.label[f2]:
        raise ValueError("normalisation does not align the alpha-labels")
    out = nb.copy()
    y, z = nb.omega(f1), nb.omega(f2)
    out.egroup[f1 >> 1] = join(nb.bf(f1), nb.bf(f2))
    del out.egroup[f2 >> 1]
    for f in (f2, f2 ^ 1):
        del out.alpha[f], out.emap[f], out.label[f]
    pi.edges.update({f2: f1, f2 ^ 1: f1 ^ 1})
    if m.kind == "IIIA":
        if y != z:
            raise ValueError("IIIA needs a common terminal vertex")
        Gy = nb.ambient_v(y)
        bb, bb2 = nb.f_omega(f1), nb.f_omega(f2)
        out.vgroup[y] = join(nb.vgroup[y], extra=[Gy.mul(Gy.inv(bb), bb2)])
        return out, pi
    if y == z:
        raise ValueError("IA needs distinct terminal vertices")
    if nb.f_omega(f1) != nb.f_omega(f2):
        raise ValueError("normalisation does not align the omega-labels")
    # merge z into y
    out.vgroup[y] = join(nb.vgroup[y], nb.vgroup[z])
    for f, u in list(out.alpha.items()):
        if u == z:
            out.alpha[f] = y
    del out.vgroup[z], out.vmap[z]
    if out.base == z:
        out.base = y
    pi.vertices[z] = y
    return out, pi


# path translation -------------------------------------------------------

def nu_translate(b: AGraph, p: APath) -> APath:
    """[b0, f1, b1, ..., fs, bs] -> [(b0 g1), e1, (k1 b1 g2), ..., es, (ks bs)]."""
    verts = p.vertices(b.alpha)
    for x, u in zip(p.elements, verts):
        if x not in b.vgroup[u]:
            raise ValueError(f"path element {x} is not in B_{u}")
    els = []
    carry = 0
    for i, f in enumerate(p.edges):
        G = b.ambient_v(verts[i])
        els.append(G.mul(carry, p.elements[i], b.label[f]))
        carry = b.f_omega(f)
    G = b.ambient_v(verts[-1])
    els.append(G.mul(carry, p.elements[-1]))
    return APath(b.vmap[p.start], tuple(els), tuple(b.emap[f] for f in p.edges))


def b_reduced(b: AGraph, p: APath) -> bool:
    """Reduced as a path in the associated graph of groups."""
    for i in range(len(p.edges) - 1):
        f = p.edges[i]
        if p.edges[i + 1] != f ^ 1:
            continue
        x = p.elements[i + 1]
        if any(b.boundary_image(f ^ 1, g) == x for g in b.bf(f).elements):
            return False
    return True


def loop_generators(b: AGraph, base: int | None = None) -> list[APath]:
    """Loops at ``base`` generating pi_1 of the associated graph of groups."""
    base = b.base if base is None else base
    g = b.graph()
    parent = g.spanning_tree(base)

    def to(v):
        eds = []
        while v != base:
            e = parent[v]
            eds.append(e)
            v = b.alpha[e]
        return eds[::-1]

    def loop(eds, mid_index=None, mid=0):
        els = [0] * (len(eds) + 1)
        if mid_index is not None:
            els[mid_index] = mid
        return APath(base, tuple(els), tuple(eds))

    out = []
    for v in [base] + sorted(parent):
        p = to(v)
        back = [f ^ 1 for f in reversed(p)]
        for x in minimal_generating_set(b.vgroup[v]):
            out.append(loop(p + back, len(p), x))
    tree = {f >> 1 for f in parent.values()}
    for pr in b.pairs:
        if pr in tree:
            continue
        f = 2 * pr
        eds = to(b.alpha[f]) + [f] + [h ^ 1 for h in reversed(to(b.omega(f)))]
        out.append(loop(eds))
    return out


def push_path(b: AGraph, m: FoldMove, p: APath) -> APath:
    """Image of a B-path under the normalisation of ``m`` followed by the fold."""
    els, eds = list(p.elements), list(p.edges)
    verts = p.vertices(b.alpha)
    if m.kind != "IIA":
        x = b.alpha[m.f2]
        Gx = b.ambient_v(x)
        # vertex adjust on f2: f2_alpha -> beta f2_alpha
        beta = m.adjust
        for i, f in enumerate(eds):
            if f == m.f2:
                els[i] = Gx.mul(els[i], Gx.inv(beta))
            elif f == m.f2 ^ 1:
                els[i + 1] = Gx.mul(beta, els[i + 1])
        # the edge aux move leaves nu-images untouched
        if m.conj_vertex is not None:
            u, h = m.conj_vertex, m.conj_h
            Gu = b.ambient_v(u)
            for i, v in enumerate(verts):
                if v == u:
                    els[i] = Gu.conj(h, els[i])
        nb = normalize(b, m)
        if m.kind == "IIIA":
            y = nb.omega(m.f1)
            Gy = nb.ambient_v(y)
            bb, bb2 = nb.f_omega(m.f1), nb.f_omega(m.f2)
            d = Gy.mul(Gy.inv(bb), bb2)      # b^-1 b'
            for i, f in enumerate(eds):
                if f == m.f2:
                    els[i + 1] = Gy.mul(d, els[i + 1])
                elif f == m.f2 ^ 1:
                    els[i] = Gy.mul(els[i], Gy.inv(d))
        eds = [m.f1 if f == m.f2 else m.f1 ^ 1 if f == m.f2 ^ 1 else f for f in eds]
        start = p.start
        if m.kind == "IA" and start == nb.omega(m.f2):
            start = nb.omega(m.f1)
        return APath(start, tuple(els), tuple(eds))
    return p


def nu_normal_forms(b: AGraph, loops: list[APath]) -> list[APath]:
    return [normal_form(b.target, nu_translate(b, q)) for q in loops]


def foldedness_certificate(b: AGraph, max_len: int = 6) -> Report:
    """Every reduced B-path of length <= max_len must translate to a reduced A-path.

    Reducedness is decided on consecutive edge pairs, so it suffices to check
    every window f, x, f' with all x in B_omega(f); windows are reached by
    walking edge sequences of length up to ``max_len``.
    """
    if max_len < 2:
        return Report(True)
    A = b.target
    checked = set()
    for f in b.edges:
        for f2 in b.star(b.omega(f)):
            if (f, f2) in checked:
                continue
            checked.add((f, f2))
            u = b.omega(f)
            for x in sorted(b.vgroup[u].elements):
                p = APath(b.alpha[f], (0, x, 0), (f, f2))
                if not b_reduced(b, p):
                    continue
                q = nu_translate(b, p)
                if q.edges[1] == q.edges[0] ^ 1 and q.elements[1] in A.omega_image(q.edges[0]):
                    return Report(False, "foldedness", (f, x, f2),
                                  f"reduced B-path ({f}, {x}, {f2}) maps to a non-reduced A-path")
    return Report(True)


def is_structurally_isomorphic(b: AGraph) -> Report:
    """[.] bijective on vertices and edges with full vertex and edge groups."""
    A = b.target
    if sorted(b.vmap.values()) != sorted(A.graph.vertices):
        return Report(False, "vertices", None, "[.] is not a bijection on vertices")
    if sorted(b.emap.values()) != sorted(A.graph.edges):
        return Report(False, "edges", None, "[.] is not a bijection on edges")
    for u in b.vertices:
        if b.vgroup[u].order != b.ambient_v(u).order:
            return Report(False, "vertex group", u, f"|B_{u}| < |A_[{u}]|")
    for p in b.pairs:
        if b.egroup[p].order != b.ambient_e(2 * p).order:
            return Report(False, "edge group", p, f"|B_f| < |A_[f]| on pair {p}")
    return Report(True)


def agraph_to_dot(b: AGraph, name: str = "B", styles: Mapping[int, str] | None = None) -> str:
    A = b.target
    lines = [f"digraph {name} {{"]
    for u in b.vertices:
        lines.append(f'  u{u} [label="{b.vgroup[u].order} @ {A.vname(b.vmap[u])}"];')
    styles = styles or {}
    for p in b.pairs:
        f = 2 * p
        st = styles.get(p, "")
        lines.append(f'  u{b.alpha[f]} -> u{b.omega(f)} [label="{A.ename(b.emap[f])} |{b.egroup[p].order}|"'
                     + (f", {st}" if st else "") + "];")
    lines.append("}")
    return "\n".join(lines) + "\n"
