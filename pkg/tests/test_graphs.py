"""Graph constructions: edge orders, weights, enumerations."""

import pytest

from zonoforge.graphs import (
    DirectedMultigraph,
    Orientation,
    RootedTree,
    broken_wheel,
    edge_matrix,
    enumerate_orientations,
    enumerate_rooted_trees,
    gbw,
    weights,
)

FORK = RootedTree(3, (0, 1, 1))


def test_broken_wheel_x4_matrix():
    x = edge_matrix(broken_wheel(4))
    assert x.rows() == [
        [1, 1, -1, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, -1, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, -1, 0],
        [0, 0, 0, 0, 0, 0, 1, 1],
    ]


def test_broken_wheel_small():
    g1 = broken_wheel(1)
    assert g1.edges == ((0, 1), (0, 1))
    x2 = edge_matrix(broken_wheel(2))
    assert x2.columns == ((1, 0), (1, 0), (-1, 1), (0, 1))
    with pytest.raises(ValueError):
        broken_wheel(0)


def test_gbw_line_all_forward_is_broken_wheel():
    for n in (1, 2, 3, 5):
        g = gbw(RootedTree.path(n), Orientation.all_forward(n))
        assert g.edges == broken_wheel(n).edges


def test_gbw_weights_examples():
    line = RootedTree.path(3)
    assert weights(gbw(line, Orientation((1, 1, -1)))) == (1, 2, 0)
    assert weights(gbw(FORK, Orientation((1, -1, -1)))) == (3, 0, 0)
    for tree in enumerate_rooted_trees(4):
        assert weights(gbw(tree, Orientation.all_forward(4))) == (1, 1, 1, 1)


def test_gbw_fork_reversed_edges_point_to_root():
    g = gbw(FORK, Orientation((1, -1, -1)))
    tree_edges = [e for e in g.edges if 0 not in e]
    assert tree_edges == [(2, 1), (3, 1)]


def test_edge_vector_sign_convention():
    g = gbw(FORK, Orientation((1, -1, 1)))
    x = edge_matrix(g)
    # the tree edge at vertex 2 is (2, 1), realized as e1 - e2
    assert x.column(3) == (1, -1, 0)
    single = DirectedMultigraph(2, ((0, 1),))
    assert edge_matrix(single).columns == ((1,),)


def test_enumerate_orientations():
    assert [o.k for o in enumerate_orientations(1)] == [(1,)]
    assert [o.k for o in enumerate_orientations(3)] == [
        (1, -1, -1),
        (1, -1, 1),
        (1, 1, -1),
        (1, 1, 1),
    ]
    assert len(enumerate_orientations(5)) == 16


def test_enumerate_rooted_trees_counts():
    assert len(enumerate_rooted_trees(1)) == 1
    assert len(enumerate_rooted_trees(2)) == 1
    trees3 = enumerate_rooted_trees(3)
    assert len(trees3) == 3
    assert {t.parent for t in trees3} == {(0, 1, 2), (0, 3, 1), (0, 1, 1)}
    assert len(enumerate_rooted_trees(4)) == 16
    assert len(enumerate_rooted_trees(3, distinct_shapes=True)) == 2
    with pytest.raises(ValueError):
        enumerate_rooted_trees(9)


def test_gbw_structural_invariants():
    for n in (1, 2, 3, 4):
        for tree in enumerate_rooted_trees(n):
            for k in enumerate_orientations(n):
                g = gbw(tree, k)
                assert g.nvertices == n + 1
                assert len(g.edges) == 2 * n
                w = weights(g)
                assert sum(w) == n
                assert edge_matrix(g).rank == n


def test_tree_validation():
    with pytest.raises(ValueError):
        RootedTree(3, (0, 3, 2))  # 2 and 3 point at each other
    with pytest.raises(ValueError):
        RootedTree(2, (1, 1))  # root must carry the 0 sentinel
    with pytest.raises(ValueError):
        Orientation((-1, 1))
    with pytest.raises(ValueError):
        Orientation((1, 0))


def test_json_round_trips():
    t = RootedTree(3, (0, 1, 1))
    assert RootedTree.from_json_dict(t.to_json_dict()) == t
    assert t.to_json_dict() == {"n": 3, "parent": [0, 1, 1]}
    k = Orientation((1, -1, 1))
    assert Orientation.from_json_dict(k.to_json_dict()) == k
