import random

import pytest
from hypothesis import given, strategies as st

from accessfold.agraph import (
    FoldMove,
    apply_aux_move,
    apply_fold,
    apply_vertex_adjust,
    associated_graph_of_groups,
    build_wedge,
    find_fold,
    foldedness_certificate,
    is_folded,
    is_structurally_isomorphic,
    loop_generators,
    nu_normal_forms,
    nu_translate,
    push_path,
    trivial_agraph,
    validate_agraph,
)
from accessfold.graphs import APath, default_generating_tuple, normal_form
from accessfold.groups import GroupTable
from helpers import gog, random_gog, s3

T = lambda: GroupTable.cyclic(1)


def s3_c4():
    G = s3()
    return gog([G, GroupTable.cyclic(4)], [(0, 1, GroupTable.cyclic(2), G.element("(1,2)"), 2)])


def theta():
    return gog([T(), T()], [(0, 1, T(), None, None) for _ in range(3)])


def s3_c4_wedge():
    A = s3_c4()
    G = A.vgroup(0)
    S = [APath(0, (G.element("(1,2,3)"),)), APath(0, (0, 1, 0), (0, 1))]
    return A, build_wedge(A, S)


def test_trivial_agraph_is_valid_and_folded():
    A = s3_c4()
    b = trivial_agraph(A)
    assert validate_agraph(b)
    assert is_folded(b)
    assert is_structurally_isomorphic(b)
    assert foldedness_certificate(b)


def test_condition_five_fault_is_named():
    b = trivial_agraph(s3_c4())
    b.vgroup[0] = b.ambient_v(0).trivial_subgroup()
    rep = validate_agraph(b)
    assert not rep and rep.condition == "condition 5"
    assert rep.witness == 0


def test_associated_graph_of_trivial_agraph_has_same_orders():
    A = s3_c4()
    B = associated_graph_of_groups(trivial_agraph(A))
    assert [B.vgroup(v).order for v in B.graph.vertices] == [6, 4]
    assert B.egroup(0).order == 2
    assert all(B.alpha_map(e).is_monomorphism() for e in B.graph.edges)


def test_nu_is_the_identity_on_the_trivial_agraph(rng):
    A = s3_c4()
    b = trivial_agraph(A)
    for _ in range(30):
        n = rng.randint(0, 5)
        eds, v = [], rng.choice([0, 1])
        start = v
        for _ in range(n):
            e = rng.choice(A.graph.star[v])
            eds.append(e)
            v = A.graph.omega(e)
        p = APath(start, tuple(rng.randrange(A.vgroup(u).order) for u in
                               APath(start, (0,) * (n + 1), tuple(eds)).vertices(A.graph.alpha)), tuple(eds))
        assert nu_translate(b, p) == p


def test_wedge_of_elliptic_and_hyperbolic_entries():
    A, w = s3_c4_wedge()
    b = w.agraph
    assert validate_agraph(b)
    assert w.elliptic == [0]
    assert len(w.circles) == 1 and len(w.circles[0]) == 2
    assert b.vgroup[0].order == 3
    assert all(b.egroup[p].order == 1 for p in b.pairs)
    # the circle spells out the hyperbolic entry
    assert nu_normal_forms(b, loop_generators(b))[-1] == normal_form(A, APath(0, (0, 1, 0), (0, 1)))


def test_wedge_of_theta():
    A = theta()
    w = build_wedge(A, [p for p, _ in default_generating_tuple(A)])
    assert len(w.agraph.vertices) == 3 and len(w.agraph.pairs) == 4
    assert w.elliptic == []


def test_wedge_rejects_mismatched_base():
    A = s3_c4()
    with pytest.raises(ValueError):
        build_wedge(A, [APath(0, (0,)), APath(1, (0,))])
    with pytest.raises(ValueError):
        build_wedge(A, [])


def test_fold_sequence_on_s3_c4():
    _, w = s3_c4_wedge()
    b = w.agraph
    m = find_fold(b)
    assert m.kind == "IIIA" and {m.f1 >> 1, m.f2 >> 1} == {0, 1}
    b, pi = apply_fold(b, m)
    assert pi.e(m.f2) == m.f1 and pi.e(m.f2 ^ 1) == m.f1 ^ 1
    assert b.vgroup[1].order == 4 and len(b.pairs) == 1
    m = find_fold(b)
    assert m.kind == "IIA"
    b, _ = apply_fold(b, m)
    assert b.orders() == {"vertices": {"0": 6, "1": 4}, "edges": {"0": 2}}
    assert find_fold(b) is None
    assert is_structurally_isomorphic(b)


def test_ia_fold_merges_vertices():
    A = theta()
    b = build_wedge(A, [p for p, _ in default_generating_tuple(A)]).agraph
    m = find_fold(b)
    assert m.kind == "IA"
    nb, pi = apply_fold(b, m)
    assert len(nb.vertices) == 2 and len(nb.pairs) == 3
    z = b.omega(m.f2)
    assert pi.v(z) == b.omega(m.f1)
    assert is_folded(nb) and is_structurally_isomorphic(nb)


def test_iia_fold_doubles_edge_group():
    C2 = GroupTable.cyclic(2)
    A = gog([C2, C2], [(0, 1, C2, 1, 1)])
    b = trivial_agraph(A)
    b.egroup[0] = C2.trivial_subgroup()
    m = find_fold(b)
    assert m == FoldMove("IIA", 0, g=1)
    nb, _ = apply_fold(b, m)
    assert nb.egroup[0].order == 2
    assert validate_agraph(nb)


def test_iia_fold_grows_far_vertex_group():
    C2 = GroupTable.cyclic(2)
    A = gog([C2, C2], [(0, 1, C2, 1, 1)])
    b = trivial_agraph(A)
    b.egroup[0] = C2.trivial_subgroup()
    b.vgroup[1] = C2.trivial_subgroup()
    nb, _ = apply_fold(b, find_fold(b))
    assert nb.vgroup[1].order == 2


def test_inapplicable_folds_are_rejected():
    _, w = s3_c4_wedge()
    b = w.agraph
    with pytest.raises(ValueError):
        apply_fold(b, FoldMove("IIIA", 0, 0))
    with pytest.raises(ValueError):
        apply_fold(b, FoldMove("IIA", 0, g=0))


def test_restricted_search():
    _, w = s3_c4_wedge()
    assert find_fold(w.agraph, allowed={0}) is None
    assert find_fold(w.agraph, allowed={0, 1}) is not None


def test_aux_move_identity_and_inverse():
    _, w = s3_c4_wedge()
    b, _ = apply_fold(w.agraph, find_fold(w.agraph))
    assert apply_aux_move(b, 0, 0) is b
    moved = apply_aux_move(b, 0, 1)
    assert validate_agraph(moved)
    back = apply_aux_move(moved, 0, 1)
    assert back.label == b.label and back.egroup == b.egroup
    loops = loop_generators(b)
    assert nu_normal_forms(moved, loops) == nu_normal_forms(b, loops)


def test_vertex_adjust_needs_element_of_vertex_group():
    _, w = s3_c4_wedge()
    b = w.agraph
    outside = next(x for x in range(6) if x not in b.vgroup[0])
    with pytest.raises(ValueError):
        apply_vertex_adjust(b, 0, outside)


def test_certificate_flags_a_missing_fold():
    _, w = s3_c4_wedge()
    rep = foldedness_certificate(w.agraph)
    assert not rep and rep.condition == "foldedness"


def test_folding_is_deterministic():
    A = theta()
    S = [p for p, _ in default_generating_tuple(A)]
    runs = []
    for _ in range(2):
        b = build_wedge(A, S).agraph
        moves = []
        while (m := find_fold(b)) is not None:
            moves.append(m)
            b, _ = apply_fold(b, m)
        runs.append((moves, b))
    assert runs[0] == runs[1]


@given(st.integers(0, 10 ** 6))
def test_folds_preserve_the_image_subgroup(seed):
    rng = random.Random(seed)
    A = random_gog(rng)
    S = [p for p, _ in default_generating_tuple(A)]
    b = build_wedge(A, S).agraph
    for _ in range(40):
        m = find_fold(b)
        if m is None:
            break
        loops = loop_generators(b)
        before = nu_normal_forms(b, loops)
        nb, _ = apply_fold(b, m)
        assert validate_agraph(nb)
        after = [normal_form(A, nu_translate(nb, push_path(b, m, q))) for q in loops]
        assert after == before
        b = nb
    assert find_fold(b) is None
    assert foldedness_certificate(b)
