import numpy as np
import pytest

from cggm import graphs
from cggm.errors import GroupOrderCapError, InvalidGraphError, NotAutomorphismError


def test_build_k3_example(k3_orange_purple):
    g = k3_orange_purple
    assert g.p == 3 and g.r == 3 and g.n_edge_colors == 2
    assert g.color_of(1, 2) == g.color_of(1, 3) == 4
    assert g.color_of(2, 3) == 5


def test_build_trivial_graph():
    g = graphs.build(1, [], [(1,)], [])
    assert g.p == 1 and g.r == 1 and g.n_colors == 1
    assert g.color_of(1, 1) == 1


def test_build_rejects_overlapping_vertex_classes():
    with pytest.raises(InvalidGraphError):
        graphs.build(2, [], [(1,), (1, 2)], [])


def test_build_rejects_incomplete_partition():
    with pytest.raises(InvalidGraphError):
        graphs.build(3, [], [(1,), (2,)], [])


def test_build_rejects_self_loop():
    with pytest.raises(InvalidGraphError):
        graphs.build(2, [(1, 1)], [(1, 2)], [((1, 1),)])


def test_build_rejects_nonedge_in_edge_class():
    with pytest.raises(InvalidGraphError):
        graphs.build(3, [(1, 2)], [(1, 2, 3)], [((1, 2), (2, 3))])


def test_color_of_conventions(k3_orange_purple):
    g = k3_orange_purple
    assert g.color_of(2, 1) == g.color_of(1, 2)  # symmetric
    assert g.color_of(1, 1) == 1  # loop color = vertex class index
    g2 = graphs.build(3, [(1, 2)], [(1, 2, 3)], [((1, 2),)])
    assert g2.color_of(1, 3) == 0  # non-adjacent pair
    with pytest.raises(InvalidGraphError):
        g.color_of(0, 1)


def test_rcop_k3_cyclic():
    g = graphs.rcop_coloring(3, [(1, 2), (2, 3), (1, 3)], [(2, 3, 1)])
    assert g.r == 1 and g.n_edge_colors == 1
    assert g.vertex_classes == ((1, 2, 3),)


def test_rcop_identity_generators():
    g = graphs.rcop_coloring(3, [(1, 2), (2, 3)], [(1, 2, 3)])
    assert g.r == 3 and g.n_edge_colors == 2


def _brute_force_orbits(p, edges, gens):
    group = graphs.enumerate_group(gens, p)
    items = [(v, v) for v in range(1, p + 1)] + sorted(
        tuple(sorted(e)) for e in edges
    )
    orbit_of = {}
    for e in items:
        orbit = frozenset(
            tuple(sorted((sig[e[0] - 1], sig[e[1] - 1]))) for sig in group
        )
        orbit_of[e] = orbit
    return set(orbit_of.values())


def test_rcop_p4_reversal_matches_brute_force():
    p, edges = 4, [(1, 2), (2, 3), (3, 4)]
    rev = (4, 3, 2, 1)
    g = graphs.rcop_coloring(p, edges, [rev])
    assert set(map(frozenset, g.vertex_classes)) == {
        frozenset({1, 4}),
        frozenset({2, 3}),
    }
    assert set(frozenset(c) for c in g.edge_classes) == {
        frozenset({(1, 2), (3, 4)}),
        frozenset({(2, 3)}),
    }
    brute = _brute_force_orbits(p, edges, [rev])
    ours = {
        frozenset((v, v) for v in cls) for cls in g.vertex_classes
    } | {frozenset(cls) for cls in g.edge_classes}
    assert ours == brute


def test_rcop_rejects_non_automorphism():
    with pytest.raises(NotAutomorphismError):
        graphs.rcop_coloring(3, [(1, 2)], [(2, 3, 1)])


def test_rcop_invariance_of_colors():
    p, edges = 4, [(1, 2), (2, 3), (3, 4)]
    gens = [(4, 3, 2, 1)]
    g = graphs.rcop_coloring(p, edges, gens)
    for sig in gens:
        for v in range(1, p + 1):
            for w in range(1, p + 1):
                assert g.color_of(v, w) == g.color_of(sig[v - 1], sig[w - 1])


def test_generously_transitive_s3():
    gens = [(2, 1, 3), (1, 3, 2)]  # generate S_3
    assert graphs.is_generously_transitive(gens, 3)


def test_generously_transitive_cyclic4_false():
    assert not graphs.is_generously_transitive([(2, 3, 4, 1)], 4)


def test_generously_transitive_transposition():
    assert graphs.is_generously_transitive([(2, 1)], 2)


def test_group_cap_exceeded():
    # S_8 has order 40320 > 100
    gens = [(2, 3, 4, 5, 6, 7, 8, 1), (2, 1, 3, 4, 5, 6, 7, 8)]
    with pytest.raises(GroupOrderCapError):
        graphs.is_generously_transitive(gens, 8, cap=100)


def test_basis_matrices_k3(k3_orange_purple):
    mats = graphs.basis_matrices(k3_orange_purple)
    assert len(mats) == 5
    total = sum(m.matrix for m in mats)
    # supports pairwise disjoint, union = reflexive extension support
    assert total.max() == 1
    expect = np.ones((3, 3), dtype=np.int64)
    assert np.array_equal(total, expect)


def test_basis_matrices_single_class_no_edges():
    g = graphs.build(3, [], [(1, 2, 3)], [])
    mats = graphs.basis_matrices(g)
    assert len(mats) == 1
    assert np.array_equal(mats[0].matrix, np.eye(3, dtype=np.int64))


def test_basis_matrices_zero_exactly_off_extension():
    g = graphs.build(4, [(1, 2), (3, 4)], [(1, 2), (3, 4)], [((1, 2), (3, 4))])
    total = sum(m.matrix for m in graphs.basis_matrices(g))
    for v in range(1, 5):
        for w in range(1, 5):
            expected = 1 if (v == w or g.adjacent(v, w)) else 0
            assert total[v - 1, w - 1] == expected


def test_relabel_identity(p3_mid_leaf):
    g2, perm = graphs.relabel_for_ordering(p3_mid_leaf, (1, 2))
    assert g2.vertex_classes == ((1,), (2, 3))
    # class A={2} moves to label 1, leaves to 2,3
    assert perm == (2, 1, 3)


def test_relabel_k3_identity_order(k3_orange_purple):
    g2, perm = graphs.relabel_for_ordering(k3_orange_purple, (1, 2, 3))
    assert perm == (1, 2, 3)
    assert g2 == k3_orange_purple


def test_relabel_round_trip(k3_orange_purple):
    eta = (2, 3, 1)
    g2, perm = graphs.relabel_for_ordering(k3_orange_purple, eta)
    again = graphs.apply_vertex_permutation(k3_orange_purple, perm, class_order=eta)
    assert again == g2


def test_relabel_preserves_colors_up_to_permutation(k3_orange_purple):
    g = k3_orange_purple
    eta = (3, 1, 2)
    g2, perm = graphs.relabel_for_ordering(g, eta)
    pos = {color: i + 1 for i, color in enumerate(eta)}
    for v in g.vertices():
        for w in g.vertices():
            old = g.color_of(v, w)
            new = g2.color_of(perm[v - 1], perm[w - 1])
            if old == 0:
                assert new == 0
            elif old <= g.r:
                assert new == pos[old]
            else:
                assert new == old


def test_graph_json_round_trip(k3_orange_purple):
    obj = graphs.graph_to_json(k3_orange_purple)
    g2 = graphs.graph_from_json(obj)
    assert g2 == k3_orange_purple


def test_rcop_json_input():
    obj = {"p": 3, "edges": [[1, 2], [2, 3], [1, 3]], "generators": [[2, 3, 1]]}
    g = graphs.graph_from_json(obj)
    assert g.r == 1 and g.n_edge_colors == 1
