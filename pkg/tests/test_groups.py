import itertools

import pytest
from hypothesis import given, strategies as st

from accessfold.groups import (
    GroupMap,
    GroupTable,
    Subgroup,
    all_subgroups,
    compose,
    conjugate_subgroup,
    coset_rep,
    is_monomorphism,
    join,
    left_coset_reps,
    map_subgroup,
    subgroup_closure,
    subgroup_intersection,
    verify_group_axioms,
)
from helpers import group_pool, s3


def test_cyclic_table_is_valid():
    assert verify_group_axioms(GroupTable.cyclic(4))


def test_corrupted_table_names_the_triple():
    t = [list(r) for r in GroupTable.cyclic(4).product]
    t[1][2] = 0
    rep = verify_group_axioms(t)
    assert not rep
    assert rep.witness is not None


def test_non_square_table_is_rejected():
    with pytest.raises(ValueError):
        verify_group_axioms([[0, 1], [1]])


def test_s3_matches_permutation_composition():
    G = s3()
    assert G.order == 6 and verify_group_axioms(G)
    perms = {}
    for name in G.names:
        p = list(range(3))
        for cyc in name.strip("()").split(")("):
            if not cyc:
                continue
            pts = [int(c) - 1 for c in cyc.split(",")]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                p[a] = b
        perms[name] = tuple(p)
    # x*y applies y first, then x
    for x, y in itertools.product(G.elements(), repeat=2):
        px, py = perms[G.name(x)], perms[G.name(y)]
        assert perms[G.name(G.mul(x, y))] == tuple(px[py[i]] for i in range(3))


def test_identity_is_normalized_to_zero():
    G = GroupTable.from_table([[1, 0], [0, 1]], ["t", "1"])
    assert G.name(0) == "1" and G.mul(1, 1) == 0


def test_closure_examples():
    G = s3()
    assert subgroup_closure(G, [G.element("(1,2,3)")]).order == 3
    assert subgroup_closure(G, [G.element("(1,2)"), G.element("(1,2,3)")]).order == 6
    assert subgroup_closure(G, []).elements == frozenset({0})


def test_intersection_examples():
    G = s3()
    a = subgroup_closure(G, [G.element("(1,2)")])
    b = subgroup_closure(G, [G.element("(1,3)")])
    c = subgroup_closure(G, [G.element("(1,2,3)")])
    assert subgroup_intersection(a, b).order == 1
    assert subgroup_intersection(a, a) == a
    assert subgroup_intersection(c, G.whole()) == c


def test_intersection_needs_same_ambient():
    with pytest.raises(ValueError):
        subgroup_intersection(s3().whole(), s3().whole())


def test_conjugation_examples():
    G = s3()
    h = subgroup_closure(G, [G.element("(1,2)")])
    brute = {G.mul(G.element("(1,2,3)"), x, G.inv(G.element("(1,2,3)"))) for x in h}
    assert conjugate_subgroup(h, G.element("(1,2,3)")).elements == brute
    assert conjugate_subgroup(h, G.element("(1,2,3)")).elements == {0, G.element("(2,3)")}
    assert conjugate_subgroup(h, 0) == h
    C4 = GroupTable.cyclic(4)
    z = subgroup_closure(C4, [2])
    assert all(conjugate_subgroup(z, g) == z for g in C4.elements())


def test_maps_examples():
    G = s3()
    assert map_subgroup(GroupMap.identity(G), subgroup_closure(G, [1])) == subgroup_closure(G, [1])
    C2 = GroupTable.cyclic(2)
    m = GroupMap.from_generators(C2, G, {"a": "(1,2)"})
    assert is_monomorphism(m)
    assert map_subgroup(m, C2.whole()).elements == {0, G.element("(1,2)")}
    C1 = GroupTable.cyclic(1)
    i1 = GroupMap(C1, C2, (0,))
    assert compose(i1, m).images == (0,)


def test_from_generators_rejects_bad_assignment():
    C4, C2 = GroupTable.cyclic(4), GroupTable.cyclic(2)
    with pytest.raises(ValueError):
        GroupMap.from_generators(C2, C4, {"a": "a"})


def test_coset_reps_cover_the_group():
    G = s3()
    h = subgroup_closure(G, [G.element("(1,2)")])
    reps = left_coset_reps(h)
    assert len(reps) == 3
    for g in G.elements():
        r, x = coset_rep(g, h)
        assert r in reps and x in h and G.mul(r, x) == g


def test_all_subgroups_of_s3():
    assert sorted(h.order for h in all_subgroups(s3())) == [1, 2, 2, 2, 3, 6]


group_index = st.integers(min_value=0, max_value=len(group_pool()) - 1)


@st.composite
def group_and_elements(draw):
    G = group_pool()[draw(group_index)]()
    xs = draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    ys = draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    return G, xs, ys


@given(group_and_elements())
def test_lagrange_and_closure_laws(data):
    G, xs, ys = data
    H = subgroup_closure(G, xs)
    K = subgroup_closure(G, xs + ys)
    assert H.is_closed() and 0 in H
    assert G.order % H.order == 0 and K.order % H.order == 0
    assert H <= K
    assert subgroup_closure(G, H.elements) == H


@given(group_and_elements(), st.integers(0, 100))
def test_conjugation_laws(data, gi):
    G, xs, _ = data
    g = gi % G.order
    H = subgroup_closure(G, xs)
    J = conjugate_subgroup(H, g)
    assert J.order == H.order
    assert conjugate_subgroup(J, G.inv(g)) == H


@given(group_and_elements())
def test_join_is_smallest_upper_bound(data):
    G, xs, ys = data
    H, K = subgroup_closure(G, xs), subgroup_closure(G, ys)
    J = join(H, K)
    assert H <= J and K <= J
    assert J == subgroup_closure(G, xs + ys)


@given(st.integers(0, len(group_pool()) - 1), st.integers(0, len(group_pool()) - 1))
def test_monomorphisms_have_full_image(i, j):
    from helpers import embeddings
    tgt = group_pool()[j]()
    for n in (1, 2):
        src = GroupTable.cyclic(n)
        for m in embeddings(src, tgt):
            assert m.is_homomorphism() and m.is_monomorphism()
            assert m.image().order == src.order
