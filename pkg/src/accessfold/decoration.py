"""Decorated A-graphs, the complexity ``c`` and decoration transport.

A decoration is stored as three sets on the A-graph: Gamma's vertices,
Gamma's edge pairs, and the script-E edge pairs.  Every other edge pair is a
tree edge; the forest, its anchors and the paths gamma_v are recomputed from
scratch whenever they are needed, so there is no derived state to keep in
sync across folds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .agraph import AGraph, FoldMap, FoldMove, Wedge
from .errors import EngineInvariantError, Report
from .groups import Subgroup


def r_value(h: Subgroup | int, C: int) -> int:
    """Largest r with |h| * 2^r <= C; 0 when |h| > C."""
    order = h if isinstance(h, int) else h.order
    r = 0
    while order * 2 ** (r + 1) <= C:
        r += 1
    return r


def p_value(h: Subgroup | int, C: int) -> int:
    return 2 ** r_value(h, C)


@dataclass(frozen=True)
class Decoration:
    gamma_vertices: frozenset
    gamma_pairs: frozenset
    script_e: frozenset

    def push(self, pi: FoldMap) -> "Decoration":
        return Decoration(
            frozenset(pi.v(u) for u in self.gamma_vertices),
            frozenset(pi.pair(p) for p in self.gamma_pairs),
            frozenset(pi.pair(p) for p in self.script_e),
        )

    def as_dict(self) -> dict:
        return {"gamma_vertices": sorted(self.gamma_vertices), "gamma_pairs": sorted(self.gamma_pairs),
                "script_e": sorted(self.script_e)}


@dataclass
class Forest:
    """Derived data: anchor of every non-Gamma vertex and its incoming tree edge."""

    anchor: dict[int, int] = field(default_factory=dict)
    parent: dict[int, int] = field(default_factory=dict)   # vertex -> e_v (directed into v)
    children: dict[int, list[int]] = field(default_factory=dict)

    def gamma_path(self, b: AGraph, v: int) -> list[int]:
        """gamma_v as a list of directed edges from the anchor to v."""
        out = []
        while v in self.parent:
            e = self.parent[v]
            out.append(e)
            v = b.alpha[e]
        return out[::-1]

    def subtree(self, v: int) -> set[int]:
        seen, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for w in self.children.get(u, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen


def _build_forest(b: AGraph, d: Decoration) -> tuple[Forest | None, Report]:
    tree_pairs = [p for p in b.pairs if p not in d.gamma_pairs and p not in d.script_e]
    adj: dict[int, list[int]] = {u: [] for u in b.vertices}
    for p in tree_pairs:
        f = 2 * p
        adj[b.alpha[f]].append(f)
        adj[b.omega(f)].append(f ^ 1)
    # components of the tree edges, checking acyclicity
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for u in b.vertices:
        if u in comp_of:
            continue
        cid = len(comps)
        comp_of[u] = cid
        members = [u]
        stack = [u]
        while stack:
            w = stack.pop()
            for f in adj[w]:
                t = b.omega(f)
                if t not in comp_of:
                    comp_of[t] = cid
                    members.append(t)
                    stack.append(t)
        comps.append(members)
    for cid, members in enumerate(comps):
        n_edges = sum(len(adj[w]) for w in members) // 2
        if n_edges != len(members) - 1:
            return None, Report(False, "condition 1", sorted(members),
                                "the complement of Gamma and E contains a cycle")
    forest = Forest()
    for members in comps:
        anchors = [w for w in members if w in d.gamma_vertices]
        if len(members) == 1:
            if not anchors:
                return None, Report(False, "condition 2", members[0],
                                    f"vertex {members[0]} is neither in Gamma nor in a tree")
            continue
        if len(anchors) != 1:
            return None, Report(False, "condition 3", sorted(members),
                                f"tree meets Gamma in {len(anchors)} vertices")
        root = anchors[0]
        stack = [root]
        seen = {root}
        while stack:
            w = stack.pop()
            for f in sorted(adj[w]):
                t = b.omega(f)
                if t not in seen:
                    seen.add(t)
                    forest.parent[t] = f
                    forest.anchor[t] = root
                    forest.children.setdefault(w, []).append(t)
                    stack.append(t)
    return forest, Report(True)


def _surjective(b: AGraph, f: int) -> bool:
    """omega_f: B_f -> B_omega(f) onto (injective by construction)."""
    return b.bf(f).order == b.vgroup[b.omega(f)].order


@dataclass(frozen=True)
class ComplexityReport:
    gamma_image_edges: int
    sum_term: int
    c: int
    k: int
    C: int
    over_C: tuple = ()

    def as_dict(self) -> dict:
        return {"gamma_image_edges": self.gamma_image_edges, "sum_term": self.sum_term, "c": self.c,
                "over_C": list(self.over_C)}


@dataclass
class DecoratedAGraph:
    agraph: AGraph
    decoration: Decoration
    k: int
    C: int

    def forest(self) -> Forest:
        f, rep = _build_forest(self.agraph, self.decoration)
        if f is None:
            raise EngineInvariantError(f"invalid decoration: {rep.message}")
        return f

    def tree_pairs(self) -> set[int]:
        d = self.decoration
        return {p for p in self.agraph.pairs if p not in d.gamma_pairs and p not in d.script_e}

    def y_pairs(self) -> set[int]:
        return set(self.agraph.pairs) - set(self.decoration.script_e)

    def with_decoration(self, d: Decoration) -> "DecoratedAGraph":
        return DecoratedAGraph(self.agraph, d, self.k, self.C)


def validate_decoration(dg: DecoratedAGraph) -> Report:
    b, d = dg.agraph, dg.decoration
    pairs = set(b.pairs)
    if not d.gamma_vertices <= set(b.vertices):
        return Report(False, "structure", sorted(d.gamma_vertices - set(b.vertices)), "unknown Gamma vertex")
    if not (d.gamma_pairs <= pairs and d.script_e <= pairs):
        return Report(False, "structure", None, "unknown edge pair in the decoration")
    if d.gamma_pairs & d.script_e:
        return Report(False, "structure", sorted(d.gamma_pairs & d.script_e), "E meets the edges of Gamma")
    for p in d.gamma_pairs:
        f = 2 * p
        if b.alpha[f] not in d.gamma_vertices or b.omega(f) not in d.gamma_vertices:
            return Report(False, "structure", p, f"Gamma edge {p} has an endpoint outside Gamma")
    forest, rep = _build_forest(b, d)
    if forest is None:
        return rep
    for v in sorted(forest.parent):
        for f in forest.gamma_path(b, v):
            if not _surjective(b, f):
                return Report(False, "condition 4", f,
                              f"omega of edge {f} on gamma_{v} is not onto its terminal vertex group")
    return Report(True)


def complexity_c(dg: DecoratedAGraph) -> ComplexityReport:
    b, d = dg.agraph, dg.decoration
    image = {b.emap[2 * p] >> 1 for p in d.gamma_pairs}
    s = sum(p_value(b.egroup[p], dg.C) for p in d.script_e)
    over = tuple(sorted(p for p in d.script_e if b.egroup[p].order > dg.C))
    return ComplexityReport(len(image), s, len(image) + (2 * dg.k + 1) * s, dg.k, dg.C, over)


def initial_wedge_decoration(w: Wedge | AGraph, k: int, C: int) -> DecoratedAGraph:
    """Gamma = base vertex, E = last edge of every circle."""
    if isinstance(w, AGraph):
        raise TypeError("pass the Wedge returned by build_wedge")
    b = w.agraph
    E = frozenset(c[-1] >> 1 for c in w.circles)
    dg = DecoratedAGraph(b, Decoration(frozenset({b.base}), frozenset(), E), k, C)
    rep = validate_decoration(dg)
    if not rep:
        raise EngineInvariantError(f"initial decoration invalid: {rep.message}")
    return dg


def amalgamate_edge(dg: DecoratedAGraph, p: int) -> DecoratedAGraph:
    """Move the E-edge ``p`` and the gamma paths of its endpoints into Gamma."""
    b, d = dg.agraph, dg.decoration
    if p not in d.script_e:
        raise ValueError(f"edge pair {p} is not in E")
    if b.egroup[p].order <= dg.C:
        raise ValueError(f"edge pair {p} has order {b.egroup[p].order} <= C")
    forest = dg.forest()
    gv, gp = set(d.gamma_vertices), set(d.gamma_pairs)
    _add_paths(b, forest, [b.alpha[2 * p], b.omega(2 * p)], gv, gp)
    gp.add(p)
    return dg.with_decoration(Decoration(frozenset(gv), frozenset(gp), d.script_e - {p}))


def _add_paths(b: AGraph, forest: Forest, verts: Iterable[int], gv: set, gp: set) -> None:
    for v in verts:
        gv.add(v)
        for f in forest.gamma_path(b, v):
            gp.add(f >> 1)
            gv.add(b.alpha[f])
            gv.add(b.omega(f))


# transport ---------------------------------------------------------------

def _role(dg: DecoratedAGraph, forest: Forest, f: int) -> str:
    d, b = dg.decoration, dg.agraph
    p = f >> 1
    if p in d.script_e:
        return "E"
    if p in d.gamma_pairs:
        return "G"
    if forest.parent.get(b.omega(f)) == f:
        return "away"
    if forest.parent.get(b.alpha[f]) == f ^ 1:
        return "toward"
    raise EngineInvariantError(f"edge {f} has no role in the decoration")


def transport_decoration(dg: DecoratedAGraph, m: FoldMove, result: AGraph, pi: FoldMap
                         ) -> tuple[DecoratedAGraph, str]:
    """New decoration of ``result`` after the fold ``m``; returns it with its case tag."""
    b, d = dg.agraph, dg.decoration
    forest = dg.forest()
    C = dg.C
    half = lambda h: 2 * h.order > C    # |h| > C/2
    gv, gp, E = set(d.gamma_vertices), set(d.gamma_pairs), set(d.script_e)
    e_of = forest.parent.get

    if m.kind == "IIA":
        f = m.f1
        if _role(dg, forest, f) != "E":
            raise EngineInvariantError(f"IIA fold on edge {f} outside E after taming")
        y = b.omega(f)
        if y in gv:
            tag = "IIA-1"
        elif _surjective(b, f):
            tag = "IIA-2"
            E = (E - {f >> 1}) | {e_of(y) >> 1}
        elif half(b.bf(f)):
            tag = "IIA-3-amalgamate"
            _add_paths(b, forest, [b.alpha[f], y], gv, gp)
            gp.add(f >> 1)
            E.discard(f >> 1)
        else:
            tag = "IIA-3"
            gv.add(y)
            E.add(e_of(y) >> 1)
    else:
        e1, e2 = m.f1, m.f2
        r1, r2 = _role(dg, forest, e1), _role(dg, forest, e2)
        if r1 != "E" and r2 == "E":
            e1, e2, r1, r2 = e2, e1, r2, r1
        if r1 != "E":
            raise EngineInvariantError(f"{m.kind} fold of edges {m.f1}, {m.f2} outside E after taming")
        y, z = b.omega(e1), b.omega(e2)
        if m.kind == "IIIA":
            tag = _iiia(b, r2, y, e1, gv, E, e_of)
        else:
            tag = _ia(b, forest, r2, e1, e2, y, z, gv, gp, E, half, e_of)
    new = Decoration(frozenset(gv), frozenset(gp), frozenset(E))
    out = DecoratedAGraph(result, new.push(pi), dg.k, dg.C)
    rep = validate_decoration(out)
    if not rep:
        raise EngineInvariantError(f"transport case {tag} gives an invalid decoration: {rep.message}")
    return out, tag


def _iiia(b, r2, y, e1, gv, E, e_of) -> str:
    if r2 == "E":
        if y in gv:
            return "IIIA-1A"
        gv.add(y)
        E.add(e_of(y) >> 1)
        return "IIIA-1B"
    if r2 == "G":
        E.discard(e1 >> 1)
        return "IIIA-2A"
    if r2 == "toward":
        E.discard(e1 >> 1)
        if y in gv:
            return "IIIA-2B"
        gv.add(y)
        E.add(e_of(y) >> 1)
        return "IIIA-2C"
    gv.add(y)
    return "IIIA-2D"


def _ia(b, forest, r2, e1, e2, y, z, gv, gp, E, half, e_of) -> str:
    if r2 == "G":
        E.discard(e1 >> 1)
        if y in gv:
            return "IA-2A"
        E.add(e_of(y) >> 1)
        return "IA-2B"
    if r2 == "away":
        # e2 = e_z; the merged edge either stays in E or becomes the tree edge into z
        if y in gv:
            return "IA-4A"
        if _surjective(b, e1) and z not in forest.subtree(y):
            E.discard(e1 >> 1)
            E.add(e_of(y) >> 1)
            return "IA-4B"
        return "IA-4B-keep"
    # both in E (case 1), or e2 points toward x (case 3): same bookkeeping,
    # except that in case 3 the merged edge leaves E and becomes a tree edge
    prefix = "IA-1" if r2 == "E" else "IA-3"
    if r2 == "toward":
        E.discard(e1 >> 1)
    if y in gv and z in gv:
        return prefix + "A"
    if y in gv or z in gv:
        w = z if y in gv else y
        E.add(e_of(w) >> 1)
        return prefix + "B"
    for a, c, f in ((y, z, e1), (z, y, e2)):
        if _surjective(b, f) and c not in forest.subtree(a):
            E.add(e_of(a) >> 1)
            return prefix + "C"
    if not half(b.bf(e1)):
        gv.add(y)
        E.add(e_of(y) >> 1)
        E.add(e_of(z) >> 1)
        return prefix + "D"
    _add_paths(b, forest, [y, z], gv, gp)
    return prefix + "E"


def tame_pairs(dg: DecoratedAGraph) -> set[int]:
    return dg.y_pairs()


def push_tame(dg: DecoratedAGraph, result: AGraph, pi: FoldMap) -> DecoratedAGraph:
    """Decoration after a fold inside Y: Gamma and E are pushed forward unchanged."""
    out = DecoratedAGraph(result, dg.decoration.push(pi), dg.k, dg.C)
    rep = validate_decoration(out)
    if not rep:
        raise EngineInvariantError(f"taming fold gives an invalid decoration: {rep.message}")
    return out


def decoration_styles(dg: DecoratedAGraph) -> dict[int, str]:
    """DOT edge styles: Gamma bold, E dotted, tree edges as arrows away from the anchor."""
    d = dg.decoration
    out = {}
    forest = None
    for p in dg.agraph.pairs:
        if p in d.gamma_pairs:
            out[p] = 'style=bold, penwidth=3, arrowhead=none'
        elif p in d.script_e:
            out[p] = 'style=dotted, arrowhead=none'
        else:
            forest = forest if forest is not None else dg.forest()
            f = 2 * p
            away = forest.parent.get(dg.agraph.omega(f)) == f
            out[p] = 'style=solid, dir=' + ("forward" if away else "back")
    return out
