import random

import pytest
from hypothesis import given, strategies as st

from sawgrid import (
    DatasetError,
    Graph,
    connected_components,
    cycle_rank,
    induced_subgraph,
    load_tudataset,
    save_tudataset,
)
from conftest import random_graph


class TestGraph:
    def test_basic_invariants(self):
        g = Graph(4, [(0, 1), (1, 0), (2, 3)])
        assert g.num_edges == 2  # duplicate orientation merged
        assert g.adjacency[0] == (1,)
        assert g.adjacency[1] == (0,)

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(2, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph(2, [(0, 5)])

    def test_adjacency_symmetric(self):
        rng = random.Random(7)
        g = random_graph(10, 0.4, rng)
        for u in range(g.num_nodes):
            for v in g.adjacency[u]:
                assert u in g.adjacency[v]

    def test_immutable(self):
        g = Graph(2, [(0, 1)])
        with pytest.raises(AttributeError):
            g.num_nodes = 5


class TestLoader:
    def test_fixture_contents(self, tiny_dataset_dir):
        ds = load_tudataset(tiny_dataset_dir, "TINY")
        assert len(ds) == 3
        assert ds.num_classes == 2
        path, cycle, star = ds.graphs
        assert path.num_nodes == 3 and path.edges == {(0, 1), (1, 2)}
        assert cycle.num_nodes == 5 and cycle.num_edges == 5
        assert star.num_nodes == 4 and star.num_edges == 3
        # labels {1, -1} remapped to contiguous 0/1
        assert set(ds.labels) == {0, 1}
        assert ds.label_map == {-1: 0, 1: 1}

    def test_single_graph_fixture(self, tmp_path):
        (tmp_path / "ONE_graph_indicator.txt").write_text("1\n1\n1\n")
        (tmp_path / "ONE_A.txt").write_text("1, 2\n2, 1\n2, 3\n3, 2\n")
        (tmp_path / "ONE_graph_labels.txt").write_text("1\n")
        ds = load_tudataset(tmp_path, "ONE")
        assert len(ds) == 1
        g = ds.graphs[0]
        assert g.num_nodes == 3
        assert g.edges == {(0, 1), (1, 2)}

    def test_missing_file_names_it(self, tmp_path):
        with pytest.raises(DatasetError, match="graph_indicator"):
            load_tudataset(tmp_path, "NOPE")

    def test_parse_error_carries_line_number(self, tmp_path):
        (tmp_path / "BAD_graph_indicator.txt").write_text("1\n1\n")
        (tmp_path / "BAD_A.txt").write_text("1, 2\nfoo, 2\n")
        (tmp_path / "BAD_graph_labels.txt").write_text("0\n")
        with pytest.raises(DatasetError, match="BAD_A.txt:2"):
            load_tudataset(tmp_path, "BAD")

    def test_node_id_out_of_range(self, tmp_path):
        (tmp_path / "BAD_graph_indicator.txt").write_text("1\n1\n")
        (tmp_path / "BAD_A.txt").write_text("1, 9\n")
        (tmp_path / "BAD_graph_labels.txt").write_text("0\n")
        with pytest.raises(DatasetError, match="out of range"):
            load_tudataset(tmp_path, "BAD")

    def test_cross_graph_edge(self, tmp_path):
        (tmp_path / "BAD_graph_indicator.txt").write_text("1\n2\n")
        (tmp_path / "BAD_A.txt").write_text("1, 2\n")
        (tmp_path / "BAD_graph_labels.txt").write_text("0\n1\n")
        with pytest.raises(DatasetError, match="crosses graphs"):
            load_tudataset(tmp_path, "BAD")

    def test_self_loops_dropped_and_counted(self, tmp_path):
        (tmp_path / "L_graph_indicator.txt").write_text("1\n1\n")
        (tmp_path / "L_A.txt").write_text("1, 1\n1, 2\n2, 1\n")
        (tmp_path / "L_graph_labels.txt").write_text("0\n")
        ds = load_tudataset(tmp_path, "L")
        assert ds.dropped_self_loops == 1
        assert ds.graphs[0].num_edges == 1

    def test_round_trip(self, tiny_dataset_dir, tmp_path):
        ds = load_tudataset(tiny_dataset_dir, "TINY")
        out = tmp_path / "resaved"
        save_tudataset(ds, out)
        ds2 = load_tudataset(out, "TINY")
        assert ds2.graphs == ds.graphs
        assert ds2.labels == ds.labels


class TestQueries:
    def test_induced_keep_all_is_identity(self):
        rng = random.Random(3)
        g = random_graph(8, 0.4, rng)
        sub, kept = induced_subgraph(g, lambda v: True)
        assert sub == g
        assert kept == list(range(8))

    def test_induced_drops_middle_of_path(self):
        g = Graph(3, [(0, 1), (1, 2)])
        sub, kept = induced_subgraph(g, lambda v: v != 1)
        assert sub.num_nodes == 2 and sub.num_edges == 0
        assert kept == [0, 2]

    def test_five_cycle_keep_four(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        sub, kept = induced_subgraph(g, lambda v: v != 4)
        assert sub.num_nodes == 4 and sub.num_edges == 3
        assert cycle_rank(sub) == 0

    def test_induced_monotone(self):
        rng = random.Random(11)
        g = random_graph(10, 0.3, rng)
        keep1 = set(rng.sample(range(10), 4))
        keep2 = keep1 | set(rng.sample(range(10), 3))
        sub1, m1 = induced_subgraph(g, lambda v: v in keep1)
        sub2, m2 = induced_subgraph(g, lambda v: v in keep2)
        edges1 = {(m1[u], m1[v]) for u, v in sub1.edges}
        edges2 = {(m2[u], m2[v]) for u, v in sub2.edges}
        assert edges1 <= edges2

    def test_components(self):
        assert connected_components(Graph(0, []))[1] == 0
        assert connected_components(Graph(5, []))[1] == 5
        g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        comp, count = connected_components(g)
        assert count == 3
        assert len({comp[v] for v in range(5)}) == 1

    def test_cycle_rank(self):
        tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
        assert cycle_rank(tree) == 0
        five_cycle = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert cycle_rank(five_cycle) == 1
        two_triangles = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert cycle_rank(two_triangles) == 2

    @given(st.integers(0, 12), st.floats(0.0, 0.9), st.integers(0, 10**6))
    def test_cycle_rank_zero_iff_forest(self, n, p, seed):
        g = random_graph(n, p, random.Random(seed))
        rank = cycle_rank(g)
        assert rank >= 0
        _, comps = connected_components(g)
        is_forest = g.num_edges == g.num_nodes - comps
        assert (rank == 0) == is_forest
