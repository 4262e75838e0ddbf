"""Spanning trees: construction, paths, exchange, shape classification."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import assert_valid_spanning_tree, graph_and_tree
from twobranch import (
    Graph,
    Shape,
    SpanningTree,
    TreeError,
    classify_shape,
    complete_graph,
    cycle_graph,
    path_graph,
    random_claw_free_connected,
    random_graph,
    spanning_tree_dfs,
    star_graph,
)

S1_EDGES = [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6), (1, 7)]
S2_EDGES = [(0, 1), (1, 2), (0, 3), (0, 4), (0, 5), (1, 6), (2, 7), (2, 8)]
S3_EDGES = [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (3, 9)]
S3C_EDGES = [(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7), (2, 8)]
S4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]


def test_dfs_tree_on_cycle_is_hamiltonian_path():
    t = spanning_tree_dfs(cycle_graph(6), 0)
    assert t.edges() == ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5))
    assert t.leaves() == {0, 5}


def test_dfs_tree_on_star_and_triangle():
    assert spanning_tree_dfs(star_graph(3), 0).leaves() == {1, 2, 3}
    t = spanning_tree_dfs(complete_graph(3), 0)
    assert len(t.leaves()) == 2


def test_dfs_rejects_disconnected():
    with pytest.raises(TreeError):
        spanning_tree_dfs(Graph(4, [(0, 1), (2, 3)]), 0)


def test_leaves_and_branch_vertices():
    g, t = graph_and_tree([(i, i + 1) for i in range(4)], 5)
    assert t.leaves() == {0, 4}
    assert t.branch_vertices() == frozenset()
    g, t = graph_and_tree([(0, i) for i in range(1, 5)], 5)
    assert len(t.leaves()) == 4
    assert t.branch_vertices() == {0}
    g, t = graph_and_tree(S1_EDGES, 8)
    assert t.leaves() == {3, 4, 5, 6, 7}
    assert t.branch_vertices() == {0, 1, 2}


def test_leaf_identity_residual():
    g, t = graph_and_tree([(i, i + 1) for i in range(4)], 5)
    assert t.leaf_identity_residual() == 0
    g, t = graph_and_tree([(0, i) for i in range(1, 5)], 5)
    assert t.leaf_identity_residual() == 0
    g, t = graph_and_tree(S1_EDGES, 8)
    assert len(t.leaves()) == 5 and t.leaf_identity_residual() == 0


def test_tree_path():
    g, t = graph_and_tree([(i, i + 1) for i in range(4)], 5)
    assert t.tree_path(0, 4).vertices == (0, 1, 2, 3, 4)
    g, t = graph_and_tree([(0, 1), (0, 2), (0, 3)], 4)
    assert t.tree_path(1, 2).vertices == (1, 0, 2)
    with pytest.raises(TreeError):
        t.tree_path(1, 1)


def test_tree_path_orientation():
    g, t = graph_and_tree(S1_EDGES, 8)
    path = t.tree_path(2, 0)  # from t-side to s-side passes through w=1
    assert path.vertices == (2, 1, 0)
    assert path.successor(1) == 0 and path.predecessor(1) == 2
    assert path.reversed().vertices == t.tree_path(0, 2).vertices


def test_exchange_triangle_rotation():
    g = complete_graph(3)
    t = SpanningTree(g, [(0, 1), (1, 2)])
    t2 = t.exchange((0, 2), (1, 2))
    assert t2.edge_set() == {(0, 1), (0, 2)}


def test_exchange_errors():
    g = complete_graph(4)
    t = SpanningTree(g, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(TreeError):
        t.exchange((0, 1), (1, 2))  # already in tree
    # removing an on-cycle edge is fine
    t2 = t.exchange((0, 3), (1, 2))
    assert t2.has_edge(0, 3) and not t2.has_edge(1, 2)


def test_exchange_off_cycle_rejected():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)])
    t = SpanningTree(g, [(0, 1), (1, 2), (2, 3)])
    # cycle closed by (1,3) is 1-2-3; edge (0,1) is off-cycle
    with pytest.raises(TreeError):
        t.exchange((1, 3), (0, 1))


def test_parent_serialization():
    g, t = graph_and_tree([(0, 1), (1, 2)], 3)
    text = t.to_parent_text()
    lines = text.strip().splitlines()
    assert lines[0] == "t 3"
    assert lines[1] == "0 -1"


def test_classify_path_and_star():
    g, t = graph_and_tree([(i, i + 1) for i in range(5)], 6)
    assert classify_shape(g, t).shape is Shape.AT_MOST_TWO_BRANCH
    g, t = graph_and_tree([(0, i) for i in range(1, 5)], 5)
    assert classify_shape(g, t).shape is Shape.AT_MOST_TWO_BRANCH


def test_classify_s1():
    g, t = graph_and_tree(S1_EDGES, 8)
    cfg = classify_shape(g, t)
    assert cfg.shape is Shape.S1
    assert (cfg.s, cfg.w, cfg.t) == (0, 1, 2)
    assert cfg.us == (3, 4, 5, 6, 7)
    assert cfg.vs == (3, 4, 5, 6, 7)
    assert cfg.branch_sets == tuple(frozenset({u}) for u in (3, 4, 5, 6, 7))
    assert cfg.independent_candidates == {3, 4, 5, 6, 7, 2, 0}
    assert (cfg.r1, cfg.r2) == (2, 1)
    assert cfg.p1 == frozenset() and cfg.p2 == frozenset()


def test_classify_s2():
    g, t = graph_and_tree(S2_EDGES, 9)
    cfg = classify_shape(g, t)
    assert cfg.shape is Shape.S2
    assert (cfg.s, cfg.w, cfg.t) == (0, 1, 2)  # s is the degree-4 hub
    assert cfg.us == (3, 4, 5, 7, 8, 6)  # three at s, two at t, one at w
    assert cfg.independent_candidates == {3, 4, 5, 6, 7, 8, 2}


def test_classify_s3():
    g, t = graph_and_tree(S3_EDGES, 10)
    cfg = classify_shape(g, t)
    assert cfg.shape is Shape.S3 and not cfg.collapsed
    assert (cfg.s, cfg.w, cfg.z, cfg.t) == (0, 1, 2, 3)
    assert cfg.us == (4, 5, 8, 9, 6, 7)
    assert (cfg.r1, cfg.r2, cfg.r3) == (3, 1, 2)
    assert cfg.independent_candidates == {4, 5, 6, 7, 8, 9, 3}


def test_classify_s3_collapsed():
    g, t = graph_and_tree(S3C_EDGES, 9)
    cfg = classify_shape(g, t)
    assert cfg.shape is Shape.S3 and cfg.collapsed
    assert cfg.w == cfg.z == 1
    assert (cfg.s, cfg.t) == (0, 2)


def test_classify_s4():
    g, t = graph_and_tree(S4_EDGES, 10)
    cfg = classify_shape(g, t)
    assert cfg.shape is Shape.S4
    assert cfg.z == 0  # the median hub
    assert (cfg.s, cfg.t, cfg.w) == (1, 2, 3)
    assert cfg.independent_candidates == {4, 5, 6, 7, 8, 9, 0}


def test_classify_other_many_leaves():
    # three degree-4 hubs on a path: eight leaves
    edges = [(0, 1), (1, 2)]
    leaf = 3
    for hub, count in ((0, 3), (1, 2), (2, 3)):
        for _ in range(count):
            edges.append((hub, leaf))
            leaf += 1
    g, t = graph_and_tree(edges, leaf)
    cfg = classify_shape(g, t)
    assert cfg.shape is Shape.OTHER
    assert cfg.branch_distance_total > 0


def test_branch_sets_partition():
    for edges, n in ((S1_EDGES, 8), (S2_EDGES, 9), (S3_EDGES, 10), (S3C_EDGES, 9), (S4_EDGES, 10)):
        g, t = graph_and_tree(edges, n)
        cfg = classify_shape(g, t)
        hubs = set(cfg.hubs())
        covered = set()
        for bs in cfg.branch_sets:
            assert not (bs & covered)
            covered |= bs
            assert len(bs & t.leaves()) == 1
        assert covered | hubs | cfg.p1 | cfg.p2 | cfg.p3 == set(range(n))


def test_expected_leaf_count_per_shape():
    for edges, n, expect in (
        (S1_EDGES, 8, 5),
        (S2_EDGES, 9, 6),
        (S3_EDGES, 10, 6),
        (S3C_EDGES, 9, 6),
        (S4_EDGES, 10, 6),
    ):
        g, t = graph_and_tree(edges, n)
        assert len(t.leaves()) == expect


def _random_spanning_tree(g, seed):
    """Random tree via seeded exchange walk from the DFS tree."""
    from twobranch import ShiftRegisterRng

    rng = ShiftRegisterRng(seed)
    t = spanning_tree_dfs(g, rng.next_below(g.n))
    non_tree = [e for e in g.edges() if e not in t.edge_set()]
    for _ in range(min(20, 2 * len(non_tree))):
        if not non_tree:
            break
        add = non_tree[rng.next_below(len(non_tree))]
        cycle = t.tree_path(*add)
        verts = cycle.vertices
        i = rng.next_below(len(verts) - 1)
        remove = (verts[i], verts[i + 1])
        t = t.exchange(add, remove)
        non_tree = [e for e in g.edges() if e not in t.edge_set()]
    return t


@given(st.integers(0, 2**32), st.integers(4, 11))
@settings(max_examples=80, deadline=None)
def test_random_trees_satisfy_leaf_identity(seed, n):
    g = random_graph(n, 0.5, seed)
    if not g.is_connected():
        g = cycle_graph(n)
    t = _random_spanning_tree(g, seed)
    assert_valid_spanning_tree(g, t)
    assert t.leaf_identity_residual() == 0


@given(st.integers(0, 2**32), st.integers(4, 11))
@settings(max_examples=60, deadline=None)
def test_classify_is_total_and_consistent(seed, n):
    g = random_claw_free_connected(n, seed, "clawrepair", 0.2)
    t = _random_spanning_tree(g, seed)
    cfg = classify_shape(g, t)
    assert cfg.shape in Shape
    if cfg.shape in (Shape.S1, Shape.S2, Shape.S3, Shape.S4):
        expected_leaves = 5 if cfg.shape is Shape.S1 else 6
        assert len(t.leaves()) == expected_leaves
        # re-derive the leaf count from the branch degrees
        derived = 2 + sum(t.degree(b) - 2 for b in t.branch_vertices())
        assert derived == expected_leaves


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_tree_path_reverse_property(seed):
    g = random_claw_free_connected(9, seed, "clawrepair", 0.25)
    t = _random_spanning_tree(g, seed)
    rng_pairs = [(0, g.n - 1), (1, g.n - 2)]
    for u, v in rng_pairs:
        if u == v:
            continue
        assert t.tree_path(u, v).reversed() == t.tree_path(v, u)
