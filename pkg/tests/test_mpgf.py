import random

import numpy as np
import pytest

from sawgrid import (
    Graph,
    GridSpec2,
    MPGFGrid,
    betti_curves,
    compute_filtration,
    compute_mpgf2,
    compute_mpgf_d,
    connected_components,
    cycle_rank,
    grid_l1_distance,
    make_thresholds,
    mpgf_oracle,
    superlevel_mpgf2,
)
from sawgrid.persistence import FiltrationSpec
from conftest import random_graph


def path4():
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


class TestGrid2:
    def test_path_degree_eccentricity(self):
        g = path4()
        deg = compute_filtration(g, "degree")          # [1, 2, 2, 1]
        ecc = compute_filtration(g, "eccentricity")    # [3, 2, 2, 3]
        grid = compute_mpgf2(g, deg, ecc, 2, 2)
        assert grid.values0.tolist() == [[0, 2], [1, 1]]
        assert grid.values1.tolist() == [[0, 0], [0, 0]]

    def test_constant_second_function_replicates_curve(self):
        rng = random.Random(2)
        g = random_graph(8, 0.4, rng)
        deg = compute_filtration(g, "degree")
        const = [1.0] * 8
        grid = compute_mpgf2(g, deg, const, 4, 3)
        spec = FiltrationSpec(deg, make_thresholds(deg, 4))
        c0, c1 = betti_curves(g, spec)
        for j in range(grid.shape[1]):
            assert tuple(grid.values0[:, j]) == c0.values
            assert tuple(grid.values1[:, j]) == c1.values

    def test_both_constant(self):
        g = path4()
        grid = compute_mpgf2(g, [0.0] * 4, [0.0] * 4, 3, 3)
        _, comps = connected_components(g)
        assert (grid.values0 == comps).all()
        assert (grid.values1 == cycle_rank(g)).all()

    def test_top_right_cell_is_full_graph(self):
        for seed in range(10):
            g = random_graph(9, 0.35, random.Random(seed))
            if g.num_edges == 0:
                continue
            f = compute_filtration(g, "degree")
            h = compute_filtration(g, "eccentricity")
            grid = compute_mpgf2(g, f, h, 4, 4)
            _, comps = connected_components(g)
            assert grid.values0[-1, -1] == comps
            assert grid.values1[-1, -1] == cycle_rank(g)

    def test_transpose_symmetry(self):
        for seed in range(10):
            g = random_graph(9, 0.35, random.Random(seed))
            if g.num_edges == 0:
                continue
            f = compute_filtration(g, "degree")
            h = compute_filtration(g, "closeness")
            ab = compute_mpgf2(g, f, h, 4, 5)
            ba = compute_mpgf2(g, h, f, 5, 4)
            assert (ab.values0 == ba.values0.T).all()
            assert (ab.values1 == ba.values1.T).all()

    @pytest.mark.parametrize("mode", ["graph", "clique2"])
    def test_matches_oracle(self, mode):
        for seed in range(20):
            g = random_graph(10, 0.35, random.Random(seed))
            if g.num_edges == 0:
                continue
            f = compute_filtration(g, "degree")
            h = compute_filtration(g, "eccentricity")
            grid = compute_mpgf2(g, f, h, 4, 4, complex_mode=mode)
            b0, b1 = mpgf_oracle(g, f, h, grid.spec.thresholds_f,
                                 grid.spec.thresholds_g, complex_mode=mode)
            assert (grid.values0 == b0).all()
            assert (grid.values1 == b1).all()

    def test_monotone_vertex_containment(self):
        rng = random.Random(9)
        g = random_graph(10, 0.3, rng)
        f = [rng.random() for _ in range(10)]
        h = [rng.random() for _ in range(10)]
        t_f = make_thresholds(f, 4)
        t_g = make_thresholds(h, 4)
        cells = {}
        for i, a in enumerate(t_f):
            for j, b in enumerate(t_g):
                cells[i, j] = {v for v in range(10) if f[v] <= a and h[v] <= b}
        for i in range(4):
            for j in range(4):
                for i2 in range(i, 4):
                    for j2 in range(j, 4):
                        assert cells[i, j] <= cells[i2, j2]

    def test_alternative_convention_same_array(self):
        g = path4()
        deg = compute_filtration(g, "degree")
        ecc = compute_filtration(g, "eccentricity")
        paper = compute_mpgf2(g, deg, ecc, 2, 2, cell_convention="paper")
        alt = compute_mpgf2(g, deg, ecc, 2, 2, cell_convention="alternative")
        assert (paper.values0 == alt.values0).all()
        assert (paper.values1 == alt.values1).all()
        assert paper.spec.x_breaks() != alt.spec.x_breaks()


class TestSuperlevel:
    def test_negation_reversal_equivalence(self):
        for seed in range(10):
            g = random_graph(9, 0.35, random.Random(seed))
            if g.num_edges == 0:
                continue
            f = compute_filtration(g, "degree")
            h = compute_filtration(g, "eccentricity")
            sup = superlevel_mpgf2(g, f, h, 4, 4)
            t_f = make_thresholds(f, 4)
            t_g = make_thresholds(h, 4)
            sub = compute_mpgf2(
                g, [-v for v in f], [-v for v in h], 4, 4,
                thresholds_f=tuple(-t for t in reversed(t_f)),
                thresholds_g=tuple(-t for t in reversed(t_g)),
            )
            assert (sup.values0 == sub.values0[::-1, ::-1]).all()
            assert (sup.values1 == sub.values1[::-1, ::-1]).all()

    def test_both_constant(self):
        # constant values widen to thresholds (0, 1); only the cell where
        # both cuts are at 0 keeps any node under f >= alpha
        g = path4()
        grid = superlevel_mpgf2(g, [0.0] * 4, [0.0] * 4, 3, 3)
        assert grid.values0.tolist() == [[1, 0], [0, 0]]
        assert (grid.values1 == 0).all()

    def test_path_example_by_enumeration(self):
        g = path4()
        deg = compute_filtration(g, "degree")
        ecc = compute_filtration(g, "eccentricity")
        grid = superlevel_mpgf2(g, deg, ecc, 2, 2)
        b0, b1 = mpgf_oracle(g, deg, ecc, grid.spec.thresholds_f,
                             grid.spec.thresholds_g, direction="superlevel")
        assert (grid.values0 == b0).all()
        assert (grid.values1 == b1).all()


class TestGridD:
    def test_d1_equals_betti_curve(self):
        g = path4()
        deg = compute_filtration(g, "degree")
        out = compute_mpgf_d(g, [deg], [3])
        spec = FiltrationSpec(deg, make_thresholds(deg, 3))
        c0, c1 = betti_curves(g, spec)
        assert tuple(out.values0) == c0.values
        assert tuple(out.values1) == c1.values

    def test_d2_equals_mpgf2(self):
        for seed in range(20):
            g = random_graph(9, 0.35, random.Random(seed))
            if g.num_edges == 0:
                continue
            f = compute_filtration(g, "degree")
            h = compute_filtration(g, "eccentricity")
            grid2 = compute_mpgf2(g, f, h, 4, 3)
            gridd = compute_mpgf_d(g, [f, h], [4, 3])
            assert (grid2.values0 == gridd.values0).all()
            assert (grid2.values1 == gridd.values1).all()

    def test_d3_constant_broadcast(self):
        g = random_graph(8, 0.4, random.Random(3))
        f = compute_filtration(g, "degree")
        h = compute_filtration(g, "eccentricity")
        const = [0.0] * 8
        grid2 = compute_mpgf2(g, f, h, 3, 3)
        grid3 = compute_mpgf_d(g, [f, h, const], [3, 3, 4])
        for k in range(grid3.values0.shape[-1]):
            assert (grid3.values0[:, :, k] == grid2.values0).all()
            assert (grid3.values1[:, :, k] == grid2.values1).all()

    def test_d0_rejected(self):
        with pytest.raises(ValueError):
            compute_mpgf_d(path4(), [], [])


class TestFlatten:
    def test_layout(self):
        spec = GridSpec2((0.0, 1.0), (0.0, 1.0))
        grid = MPGFGrid(np.array([[0, 2], [1, 1]]),
                        np.zeros((2, 2), dtype=int), spec)
        assert grid.flatten() == [0, 2, 1, 1, 0, 0, 0, 0]

    def test_ten_by_ten_length(self):
        g = random_graph(8, 0.5, random.Random(1))
        f = compute_filtration(g, "degree")
        h = compute_filtration(g, "eccentricity")
        grid = compute_mpgf2(g, f, h, 10, 10)
        assert len(grid.flatten()) == 200

    def test_zero_grid(self):
        spec = GridSpec2((0.0, 1.0), (0.0, 1.0))
        grid = MPGFGrid(np.zeros((2, 2), int), np.zeros((2, 2), int), spec)
        assert grid.flatten() == [0] * 8


def _overlay_l1(grid_a, grid_b, dimension=0):
    """Exact oracle: enumerate overlay cells, sample values at midpoints
    with plain scanning loops."""
    def value_at(grid, x, y):
        vals = grid.values0 if dimension == 0 else grid.values1
        xb, yb = grid.spec.x_breaks(), grid.spec.y_breaks()
        for i in range(len(xb) - 1):
            if xb[i] <= x < xb[i + 1]:
                for j in range(len(yb) - 1):
                    if yb[j] <= y < yb[j + 1]:
                        return float(vals[i, j])
        return 0.0

    xs = sorted(set(grid_a.spec.x_breaks()) | set(grid_b.spec.x_breaks()))
    ys = sorted(set(grid_a.spec.y_breaks()) | set(grid_b.spec.y_breaks()))
    total = 0.0
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            mx, my = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
            diff = abs(value_at(grid_a, mx, my) - value_at(grid_b, mx, my))
            total += diff * (x1 - x0) * (y1 - y0)
    return total


class TestGridDistance:
    def test_self_distance_zero(self):
        g = path4()
        deg = compute_filtration(g, "degree")
        ecc = compute_filtration(g, "eccentricity")
        grid = compute_mpgf2(g, deg, ecc, 3, 3)
        assert grid_l1_distance(grid, grid) == 0

    def test_single_cell(self):
        spec = GridSpec2((0.0, 1.0), (0.0, 1.0))
        a = MPGFGrid(np.array([[1, 0], [0, 0]]), np.zeros((2, 2), int), spec)
        b = MPGFGrid(np.zeros((2, 2), int), np.zeros((2, 2), int), spec)
        assert grid_l1_distance(a, b) == pytest.approx(1.0)

    def test_offset_domains_match_overlay_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(15):
            xa = np.sort(rng.uniform(0, 5, 3))
            ya = np.sort(rng.uniform(0, 5, 3))
            xb = np.sort(rng.uniform(0, 5, 2))
            yb = np.sort(rng.uniform(0, 5, 4))
            a = MPGFGrid(rng.integers(0, 4, (3, 3)), rng.integers(0, 4, (3, 3)),
                         GridSpec2(tuple(xa), tuple(ya)))
            b = MPGFGrid(rng.integers(0, 4, (2, 4)), rng.integers(0, 4, (2, 4)),
                         GridSpec2(tuple(xb), tuple(yb)))
            for dim in (0, 1):
                exact = grid_l1_distance(a, b, dim)
                assert exact == pytest.approx(_overlay_l1(a, b, dim), abs=1e-9)
