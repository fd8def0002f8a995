"""Multi-persistence grid functions over two or more node filtrations.

Each grid cell holds the Betti numbers of the subgraph induced by the
nodes satisfying all threshold constraints at once. The fast path sweeps
the second function incrementally inside each slice of the first
(Algorithm-1 style); `mpgf_oracle` recomputes every cell from scratch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph import Graph, connected_components, induced_subgraph
from .persistence import (
    FiltrationSpec,
    _gf2_rank,
    _triangles,
    betti_curves,
    make_thresholds,
)

CELL_CONVENTIONS = ("paper", "alternative")


@dataclass(frozen=True)
class GridSpec2:
    thresholds_f: tuple
    thresholds_g: tuple
    direction: str = "sublevel"
    cell_convention: str = "paper"

    def __post_init__(self):
        for t in (self.thresholds_f, self.thresholds_g):
            if len(t) < 2:
                raise ValueError("need at least 2 thresholds per axis")
            if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                raise ValueError("thresholds must be strictly increasing")
        if self.cell_convention not in CELL_CONVENTIONS:
            raise ValueError(f"cell_convention must be one of {CELL_CONVENTIONS}")

    @property
    def delta_f(self) -> float:
        t = self.thresholds_f
        return (t[-1] - t[0]) / (len(t) - 1)

    @property
    def delta_g(self) -> float:
        t = self.thresholds_g
        return (t[-1] - t[0]) / (len(t) - 1)

    def x_breaks(self):
        """Cell boundaries along the first axis, per convention/direction."""
        return _axis_breaks(self.thresholds_f, self.delta_f,
                            self.direction, self.cell_convention)

    def y_breaks(self):
        return _axis_breaks(self.thresholds_g, self.delta_g,
                            self.direction, self.cell_convention)


def _axis_breaks(t, delta, direction, convention):
    t = list(t)
    if direction == "superlevel" or convention == "alternative":
        # padding cell above the max: cells [t_i, t_{i+1})
        return t + [t[-1] + delta]
    # paper sublevel convention: padding cell below the min, (t_{i-1}, t_i]
    return [t[0] - delta] + t


@dataclass(frozen=True)
class MPGFGrid:
    values0: np.ndarray   # m1 x m2, Betti 0 per cell
    values1: np.ndarray   # m1 x m2, Betti 1 per cell
    spec: GridSpec2

    def __post_init__(self):
        object.__setattr__(self, "values0", np.asarray(self.values0, dtype=int))
        object.__setattr__(self, "values1", np.asarray(self.values1, dtype=int))
        m1 = len(self.spec.thresholds_f)
        m2 = len(self.spec.thresholds_g)
        if self.values0.shape != (m1, m2) or self.values1.shape != (m1, m2):
            raise ValueError("grid shape does not match the threshold lists")

    @property
    def shape(self):
        return self.values0.shape

    def flatten(self):
        """Row-major B0 grid then B1 grid: length 2 * m1 * m2."""
        return list(self.values0.ravel()) + list(self.values1.ravel())

    def to_json(self) -> str:
        return json.dumps({
            "thresholds_f": list(self.spec.thresholds_f),
            "thresholds_g": list(self.spec.thresholds_g),
            "direction": self.spec.direction,
            "cell_convention": self.spec.cell_convention,
            "betti0": self.values0.tolist(),
            "betti1": self.values1.tolist(),
        })


@dataclass(frozen=True)
class MPGFGridD:
    values0: np.ndarray
    values1: np.ndarray
    thresholds: tuple    # per-axis threshold tuples

    def __post_init__(self):
        object.__setattr__(self, "values0", np.asarray(self.values0, dtype=int))
        object.__setattr__(self, "values1", np.asarray(self.values1, dtype=int))
        shape = tuple(len(t) for t in self.thresholds)
        if self.values0.shape != shape or self.values1.shape != shape:
            raise ValueError("grid shape does not match the threshold lists")


def compute_mpgf2(g: Graph, f_values, g_values, m1: int, m2: int,
                  complex_mode: str = "graph",
                  thresholds_f=None, thresholds_g=None,
                  cell_convention: str = "paper") -> MPGFGrid:
    """Sublevel 2-parameter grid: cell (i, j) holds the Betti numbers of
    the subgraph on {v | f(v) <= a_i and g(v) <= b_j}."""
    t_f = tuple(thresholds_f) if thresholds_f is not None else make_thresholds(f_values, m1)
    t_g = tuple(thresholds_g) if thresholds_g is not None else make_thresholds(g_values, m2)
    spec = GridSpec2(t_f, t_g, "sublevel", cell_convention)

    b0 = np.zeros((len(t_f), len(t_g)), dtype=int)
    b1 = np.zeros_like(b0)
    for i, alpha in enumerate(t_f):
        sub, kept = induced_subgraph(g, lambda v: f_values[v] <= alpha)
        if sub.num_nodes == 0:
            continue
        sub_g = [g_values[old] for old in kept]
        row_spec = FiltrationSpec(sub_g, t_g, "sublevel", complex_mode)
        c0, c1 = betti_curves(sub, row_spec)
        b0[i, :] = c0.values
        b1[i, :] = c1.values
    return MPGFGrid(b0, b1, spec)


def superlevel_mpgf2(g: Graph, f_values, g_values, m1: int, m2: int,
                     complex_mode: str = "graph",
                     thresholds_f=None, thresholds_g=None) -> MPGFGrid:
    """Superlevel grid: cell (i, j) holds the Betti numbers of the subgraph
    on {v | f(v) >= a_i and g(v) >= b_j}. Computed as the sublevel grid of
    the negated functions with both axes reversed."""
    t_f = tuple(thresholds_f) if thresholds_f is not None else make_thresholds(f_values, m1)
    t_g = tuple(thresholds_g) if thresholds_g is not None else make_thresholds(g_values, m2)
    neg = compute_mpgf2(
        g,
        [-v for v in f_values],
        [-v for v in g_values],
        m1, m2,
        complex_mode,
        thresholds_f=tuple(-t for t in reversed(t_f)),
        thresholds_g=tuple(-t for t in reversed(t_g)),
    )
    spec = GridSpec2(t_f, t_g, "superlevel", "paper")
    return MPGFGrid(neg.values0[::-1, ::-1], neg.values1[::-1, ::-1], spec)


def compute_mpgf_d(g: Graph, functions, sizes, complex_mode: str = "graph",
                   thresholds=None) -> MPGFGridD:
    """d-parameter sublevel grid, recursive on the last axis.

    d = 1 reduces to the Betti curves of the single function.
    """
    functions = [list(f) for f in functions]
    if len(functions) == 0:
        raise ValueError("need at least one filtration function")
    if len(functions) != len(sizes):
        raise ValueError("functions and sizes length mismatch")
    if thresholds is None:
        thresholds = [make_thresholds(f, m) for f, m in zip(functions, sizes)]
    thresholds = [tuple(t) for t in thresholds]
    b0, b1 = _mpgf_d_rec(g, functions, thresholds, complex_mode)
    return MPGFGridD(b0, b1, tuple(thresholds))


def _mpgf_d_rec(g: Graph, functions, thresholds, complex_mode):
    if len(functions) == 1:
        if g.num_nodes == 0:
            m = len(thresholds[0])
            return np.zeros(m, dtype=int), np.zeros(m, dtype=int)
        spec = FiltrationSpec(functions[0], thresholds[0], "sublevel", complex_mode)
        c0, c1 = betti_curves(g, spec)
        return np.array(c0.values, dtype=int), np.array(c1.values, dtype=int)
    last_vals = functions[-1]
    slabs0, slabs1 = [], []
    for alpha in thresholds[-1]:
        sub, kept = induced_subgraph(g, lambda v: last_vals[v] <= alpha)
        sub_funcs = [[f[old] for old in kept] for f in functions[:-1]]
        s0, s1 = _mpgf_d_rec(sub, sub_funcs, thresholds[:-1], complex_mode)
        slabs0.append(s0)
        slabs1.append(s1)
    return np.stack(slabs0, axis=-1), np.stack(slabs1, axis=-1)


def mpgf_oracle(g: Graph, f_values, g_values, thresholds_f, thresholds_g,
                complex_mode: str = "graph", direction: str = "sublevel"):
    """Per-cell fresh recomputation; the correctness guard for the fast path."""
    b0 = np.zeros((len(thresholds_f), len(thresholds_g)), dtype=int)
    b1 = np.zeros_like(b0)
    for i, alpha in enumerate(thresholds_f):
        for j, beta in enumerate(thresholds_g):
            if direction == "sublevel":
                keep = lambda v: f_values[v] <= alpha and g_values[v] <= beta
            else:
                keep = lambda v: f_values[v] >= alpha and g_values[v] >= beta
            sub, _ = induced_subgraph(g, keep)
            _, comps = connected_components(sub)
            if complex_mode == "graph":
                cycles = sub.num_edges - sub.num_nodes + comps
            else:
                e_idx = {e: k for k, e in enumerate(sorted(sub.edges))}
                cols = [
                    (1 << e_idx[(u, v)]) | (1 << e_idx[(u, w)]) | (1 << e_idx[(v, w)])
                    for u, v, w in _triangles(sub)
                ]
                cycles = sub.num_edges - (sub.num_nodes - comps) - _gf2_rank(cols)
            b0[i, j] = comps
            b1[i, j] = cycles
    return b0, b1


def grid_l1_distance(grid_a: MPGFGrid, grid_b: MPGFGrid, dimension: int = 0) -> float:
    """Exact integral of |A - B| over the plane, each grid zero-extended
    outside its own domain rectangle; computed on the overlay of both
    cell decompositions."""
    va = grid_a.values0 if dimension == 0 else grid_a.values1
    vb = grid_b.values0 if dimension == 0 else grid_b.values1
    ax, ay = grid_a.spec.x_breaks(), grid_a.spec.y_breaks()
    bx, by = grid_b.spec.x_breaks(), grid_b.spec.y_breaks()
    xs = sorted(set(ax) | set(bx))
    ys = sorted(set(ay) | set(by))

    def cell_value(vals, xbr, ybr, xm, ym):
        # piecewise-constant lookup at the midpoint of an overlay cell
        if not (xbr[0] < xm < xbr[-1] and ybr[0] < ym < ybr[-1]):
            return 0.0
        i = np.searchsorted(xbr, xm) - 1
        j = np.searchsorted(ybr, ym) - 1
        return float(vals[i, j])

    total = 0.0
    for x0, x1 in zip(xs, xs[1:]):
        xm = 0.5 * (x0 + x1)
        for y0, y1 in zip(ys, ys[1:]):
            ym = 0.5 * (y0 + y1)
            diff = cell_value(va, ax, ay, xm, ym) - cell_value(vb, bx, by, xm, ym)
            total += abs(diff) * (x1 - x0) * (y1 - y0)
    return total
