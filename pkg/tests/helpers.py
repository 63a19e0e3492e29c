"""Small builders shared by the tests."""
import random

from accessfold.graphs import Graph, GraphOfGroups
from accessfold.groups import GroupMap, GroupTable

S3_GENS = [[1, 0, 2], [1, 2, 0]]
V4_GENS = [[1, 0, 2, 3], [0, 1, 3, 2]]


def s3():
    return GroupTable.from_permutations(S3_GENS, "S3")


def group_pool():
    return [
        lambda: GroupTable.cyclic(1), lambda: GroupTable.cyclic(2), lambda: GroupTable.cyclic(3),
        lambda: GroupTable.cyclic(4), s3, lambda: GroupTable.from_permutations(V4_GENS, "V4"),
        lambda: GroupTable.cyclic(6),
    ]


def embeddings(src: GroupTable, tgt: GroupTable) -> list[GroupMap]:
    """All injective maps of a cyclic group of order <= 2 into ``tgt``."""
    if src.order == 1:
        return [GroupMap(src, tgt, (0,))]
    return [GroupMap.from_generators(src, tgt, {1: x})
            for x in range(1, tgt.order) if tgt.element_order(x) == src.order]


def gog(vertex_groups, edges):
    """``edges``: list of (from, to, edge_group, alpha_gen_image, omega_gen_image) with
    images given as element indices (ignored for trivial edge groups)."""
    alpha, eg, bd = {}, {}, {}
    for p, (a, b, E, ia, ib) in enumerate(edges):
        alpha[2 * p], alpha[2 * p + 1] = a, b
        eg[p] = E
        va, vb = vertex_groups[a], vertex_groups[b]
        if E.order == 1:
            bd[2 * p], bd[2 * p + 1] = GroupMap(E, va, (0,)), GroupMap(E, vb, (0,))
        else:
            bd[2 * p] = GroupMap.from_generators(E, va, {1: ia})
            bd[2 * p + 1] = GroupMap.from_generators(E, vb, {1: ib})
    return GraphOfGroups(Graph(tuple(range(len(vertex_groups))), alpha), dict(enumerate(vertex_groups)), eg, bd)


def random_gog(rng: random.Random, nv: int | None = None, ne: int | None = None) -> GraphOfGroups:
    pool = group_pool()
    nv = nv or rng.randint(1, 3)
    ne = ne or rng.randint(max(1, nv - 1), nv + 1)
    vg = {v: rng.choice(pool)() for v in range(nv)}
    ends = [(rng.randrange(v), v) for v in range(1, nv)]
    while len(ends) < ne:
        ends.append((rng.randrange(nv), rng.randrange(nv)))
    alpha, eg, bd = {}, {}, {}
    for p, (a, b) in enumerate(ends):
        src = GroupTable.cyclic(rng.choice([1, 1, 2]))
        ea, eb = embeddings(src, vg[a]), embeddings(src, vg[b])
        if not (ea and eb):
            src = GroupTable.cyclic(1)
            ea, eb = embeddings(src, vg[a]), embeddings(src, vg[b])
        eg[p] = src
        alpha[2 * p], alpha[2 * p + 1] = a, b
        bd[2 * p], bd[2 * p + 1] = rng.choice(ea), rng.choice(eb)
    return GraphOfGroups(Graph(tuple(range(nv)), alpha), vg, eg, bd)
