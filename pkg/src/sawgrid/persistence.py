"""Sublevel/superlevel graph filtrations, Betti curves, and persistence diagrams.

Dimension 0 uses incremental union-find with the elder rule; dimension 1
uses cycle detection in graph mode and GF(2) boundary-matrix reduction in
clique2 mode (clique complex truncated at triangles). `oracle_counts`
recomputes everything from scratch per threshold and exists for tests.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, connected_components, induced_subgraph

DIRECTIONS = ("sublevel", "superlevel")
COMPLEX_MODES = ("graph", "clique2")


@dataclass(frozen=True)
class FiltrationSpec:
    values: tuple
    thresholds: tuple
    direction: str = "sublevel"
    complex_mode: str = "graph"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        t = self.thresholds
        if len(t) < 2:
            raise ValueError("need at least 2 thresholds")
        if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
            raise ValueError("thresholds must be strictly increasing")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if self.complex_mode not in COMPLEX_MODES:
            raise ValueError(f"complex_mode must be one of {COMPLEX_MODES}")
        if self.values:
            if self.direction == "sublevel" and t[-1] < max(self.values):
                raise ValueError("last threshold must cover max(values)")
            if self.direction == "superlevel" and t[0] > min(self.values):
                raise ValueError("first threshold must cover min(values)")

    @property
    def delta(self) -> float:
        """Mean threshold spacing; finite-death cap for essential classes."""
        t = self.thresholds
        return (t[-1] - t[0]) / (len(t) - 1)

    @property
    def cap(self) -> float:
        return self.thresholds[-1] + self.delta


@dataclass(frozen=True)
class PersistencePair:
    birth: float
    death: float
    dimension: int
    essential: bool = False

    def __post_init__(self):
        if self.birth >= self.death:
            raise ValueError("birth must be strictly less than death")


@dataclass(frozen=True)
class PersistenceDiagram:
    pairs: tuple
    dimension: int
    thresholds: tuple = ()
    direction: str = "sublevel"

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if any(p.dimension != self.dimension for p in self.pairs):
            raise ValueError("all pairs must share the diagram's dimension")

    def __len__(self):
        return len(self.pairs)

    def to_text(self) -> str:
        lines = [
            f"{p.dimension} {p.birth:.12g} {p.death:.12g} {int(p.essential)}"
            for p in self.pairs
        ]
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str, dimension: int, **kwargs) -> "PersistenceDiagram":
        pairs = []
        for line in text.splitlines():
            if not line.strip():
                continue
            d, b, dth, ess = line.split()
            pairs.append(
                PersistencePair(float(b), float(dth), int(d), bool(int(ess)))
            )
        return cls(tuple(p for p in pairs if p.dimension == dimension), dimension, **kwargs)


@dataclass(frozen=True)
class BettiCurve:
    thresholds: tuple
    values: tuple
    dimension: int

    def __post_init__(self):
        if len(self.thresholds) != len(self.values):
            raise ValueError("thresholds/values length mismatch")


def make_thresholds(values, m: int):
    """m evenly spaced thresholds spanning [min, max] of the values.

    Constant values degenerate to the two-point set {v, v+1}.
    """
    if m < 2:
        raise ValueError("need at least 2 thresholds")
    values = list(values)
    if not values:
        raise ValueError("values must be non-empty")
    lo, hi = min(values), max(values)
    if lo == hi:
        return (float(lo), float(lo) + 1.0)
    return tuple(float(t) for t in np.linspace(lo, hi, m))


def _entry_indices(spec: FiltrationSpec):
    """Per-node index of the first threshold at which the node is present."""
    t = spec.thresholds
    if spec.direction == "sublevel":
        return [bisect_left(t, v) for v in spec.values]
    # superlevel: sweep thresholds descending; entry index k means the node
    # appears at the (k+1)-th largest threshold.
    n = len(t)
    rev = [-t[n - 1 - k] for k in range(n)]
    return [bisect_left(rev, -v) for v in spec.values]


def _sweep_order_thresholds(spec: FiltrationSpec):
    """Threshold values in filtration (sweep) order."""
    if spec.direction == "sublevel":
        return list(spec.thresholds)
    return list(reversed(spec.thresholds))


def sublevel_subgraph(g: Graph, spec: FiltrationSpec, i: int) -> Graph:
    """Vertex-induced subgraph at threshold index i (spec ordering)."""
    alpha = spec.thresholds[i]
    if spec.direction == "sublevel":
        keep = lambda v: spec.values[v] <= alpha
    else:
        keep = lambda v: spec.values[v] >= alpha
    sub, _ = induced_subgraph(g, keep)
    return sub


def _triangles(g: Graph):
    """All triangles (u < v < w) of the graph."""
    adj_sets = [set(a) for a in g.adjacency]
    tris = []
    for u, v in sorted(g.edges):
        for w in adj_sets[u] & adj_sets[v]:
            if w > v:
                tris.append((u, v, w))
    return tris


def _gf2_rank(columns) -> int:
    """Rank over GF(2) of columns given as int bitmasks."""
    basis = {}
    rank = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            if low in basis:
                col ^= basis[low]
            else:
                basis[low] = col
                rank += 1
                break
    return rank


class _IncrementalGF2:
    """Maintains the GF(2) rank of a growing set of columns."""

    def __init__(self):
        self.basis = {}
        self.rank = 0

    def add(self, col: int) -> bool:
        while col:
            low = col.bit_length() - 1
            if low in self.basis:
                col ^= self.basis[low]
            else:
                self.basis[low] = col
                self.rank += 1
                return True
        return False


def betti_curves(g: Graph, spec: FiltrationSpec):
    """Incremental (B0, B1) curves over the spec's thresholds.

    Values are reported in threshold order (ascending), for both directions.
    """
    n_thr = len(spec.thresholds)
    entries = _entry_indices(spec)
    nodes_at = [[] for _ in range(n_thr)]
    for v, e in enumerate(entries):
        nodes_at[e].append(v)
    edges_at = [[] for _ in range(n_thr)]
    for u, v in sorted(g.edges):
        edges_at[max(entries[u], entries[v])].append((u, v))

    clique2 = spec.complex_mode == "clique2"
    edge_index = {}
    tris_at = None
    if clique2:
        edge_index = {e: i for i, e in enumerate(sorted(g.edges))}
        tris_at = [[] for _ in range(n_thr)]
        for u, v, w in _triangles(g):
            tris_at[max(entries[u], entries[v], entries[w])].append((u, v, w))
        gf2 = _IncrementalGF2()

    parent = list(range(g.num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    b0, b1 = [], []
    n_nodes = n_edges = comps = 0
    for i in range(n_thr):
        for v in nodes_at[i]:
            n_nodes += 1
            comps += 1
        for u, v in edges_at[i]:
            n_edges += 1
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        if clique2:
            for u, v, w in tris_at[i]:
                col = (
                    (1 << edge_index[(u, v)])
                    | (1 << edge_index[(u, w)])
                    | (1 << edge_index[(v, w)])
                )
                gf2.add(col)
            cycles = n_edges - (n_nodes - comps) - gf2.rank
        else:
            cycles = n_edges - n_nodes + comps
        b0.append(comps)
        b1.append(cycles)

    if spec.direction == "superlevel":
        b0.reverse()
        b1.reverse()
    return (
        BettiCurve(spec.thresholds, tuple(b0), 0),
        BettiCurve(spec.thresholds, tuple(b1), 1),
    )


def persistence_dim0(g: Graph, spec: FiltrationSpec) -> PersistenceDiagram:
    """Zeroth persistence by incremental union-find with the elder rule.

    On an age tie, the component containing the smallest node index
    survives. Zero-persistence pairs are dropped; each final component
    yields one essential pair capped at the final threshold plus the
    mean spacing.
    """
    n_thr = len(spec.thresholds)
    sweep = _sweep_order_thresholds(spec)
    cap = spec.cap if spec.direction == "sublevel" else spec.thresholds[0] - spec.delta
    entries = _entry_indices(spec)
    nodes_at = [[] for _ in range(n_thr)]
    for v, e in enumerate(entries):
        nodes_at[e].append(v)
    edges_at = [[] for _ in range(n_thr)]
    for u, v in sorted(g.edges):
        edges_at[max(entries[u], entries[v])].append((u, v))

    parent = list(range(g.num_nodes))
    birth = [0] * g.num_nodes     # birth sweep-index of the root's component
    min_node = list(range(g.num_nodes))
    active = [False] * g.num_nodes

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = []
    for i in range(n_thr):
        for v in nodes_at[i]:
            active[v] = True
            birth[v] = i
        for u, v in edges_at[i]:
            ru, rv = find(u), find(v)
            if ru == rv:
                continue
            # elder rule: older (smaller birth) survives; ties keep the
            # component holding the smallest node index
            if (birth[ru], min_node[ru]) <= (birth[rv], min_node[rv]):
                survivor, dying = ru, rv
            else:
                survivor, dying = rv, ru
            if birth[dying] < i:
                pairs.append(
                    PersistencePair(sweep[birth[dying]], sweep[i], 0)
                    if spec.direction == "sublevel"
                    else PersistencePair(sweep[i], sweep[birth[dying]], 0)
                )
            parent[dying] = survivor
            min_node[survivor] = min(min_node[survivor], min_node[dying])

    roots = {find(v) for v in range(g.num_nodes) if active[v]}
    for r in sorted(roots):
        if spec.direction == "sublevel":
            pairs.append(PersistencePair(sweep[birth[r]], cap, 0, essential=True))
        else:
            pairs.append(PersistencePair(cap, sweep[birth[r]], 0, essential=True))
    return PersistenceDiagram(tuple(pairs), 0, spec.thresholds, spec.direction)


def persistence_dim1(g: Graph, spec: FiltrationSpec) -> PersistenceDiagram:
    """First persistence: cycle births (graph mode) or GF(2) reduction (clique2)."""
    if spec.complex_mode == "graph":
        return _persistence_dim1_graph(g, spec)
    return _persistence_dim1_clique2(g, spec)


def _persistence_dim1_graph(g: Graph, spec: FiltrationSpec) -> PersistenceDiagram:
    n_thr = len(spec.thresholds)
    sweep = _sweep_order_thresholds(spec)
    cap = spec.cap if spec.direction == "sublevel" else spec.thresholds[0] - spec.delta
    entries = _entry_indices(spec)
    edges_at = [[] for _ in range(n_thr)]
    for u, v in sorted(g.edges):
        edges_at[max(entries[u], entries[v])].append((u, v))

    parent = list(range(g.num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = []
    for i in range(n_thr):
        for u, v in edges_at[i]:
            ru, rv = find(u), find(v)
            if ru == rv:
                # closing edge: an independent cycle is born and never dies
                if spec.direction == "sublevel":
                    pairs.append(PersistencePair(sweep[i], cap, 1, essential=True))
                else:
                    pairs.append(PersistencePair(cap, sweep[i], 1, essential=True))
            else:
                parent[ru] = rv
    return PersistenceDiagram(tuple(pairs), 1, spec.thresholds, spec.direction)


def _persistence_dim1_clique2(g: Graph, spec: FiltrationSpec) -> PersistenceDiagram:
    """Standard boundary-matrix reduction over vertices, edges, triangles."""
    sweep = _sweep_order_thresholds(spec)
    cap = spec.cap if spec.direction == "sublevel" else spec.thresholds[0] - spec.delta
    entries = _entry_indices(spec)

    simplices = [(entries[v], 0, (v,)) for v in range(g.num_nodes)]
    simplices += [
        (max(entries[u], entries[v]), 1, (u, v)) for u, v in sorted(g.edges)
    ]
    simplices += [
        (max(entries[u], entries[v], entries[w]), 2, (u, v, w))
        for u, v, w in _triangles(g)
    ]
    simplices.sort()
    index = {s[2]: j for j, s in enumerate(simplices)}

    columns = []
    for _, dim, verts in simplices:
        if dim == 0:
            columns.append(0)
        elif dim == 1:
            u, v = verts
            columns.append((1 << index[(u,)]) | (1 << index[(v,)]))
        else:
            u, v, w = verts
            columns.append(
                (1 << index[(u, v)]) | (1 << index[(u, w)]) | (1 << index[(v, w)])
            )

    low_to_col = {}
    reduced = [0] * len(columns)
    killed = set()   # creator indices later destroyed
    pairs = []
    for j, col in enumerate(columns):
        while col:
            low = col.bit_length() - 1
            if low in low_to_col:
                col ^= reduced[low_to_col[low]]
            else:
                break
        reduced[j] = col
        if col:
            low = col.bit_length() - 1
            low_to_col[low] = j
            killed.add(low)
            if simplices[low][1] == 1:
                b_idx, d_idx = simplices[low][0], simplices[j][0]
                if b_idx != d_idx:
                    if spec.direction == "sublevel":
                        pairs.append(PersistencePair(sweep[b_idx], sweep[d_idx], 1))
                    else:
                        pairs.append(PersistencePair(sweep[d_idx], sweep[b_idx], 1))

    for j, (t_idx, dim, _) in enumerate(simplices):
        if dim == 1 and reduced[j] == 0 and j not in killed:
            if spec.direction == "sublevel":
                pairs.append(PersistencePair(sweep[t_idx], cap, 1, essential=True))
            else:
                pairs.append(PersistencePair(cap, sweep[t_idx], 1, essential=True))
    return PersistenceDiagram(tuple(pairs), 1, spec.thresholds, spec.direction)


def oracle_counts(g: Graph, spec: FiltrationSpec):
    """Per-threshold (B0, B1) by full recomputation; test oracle, no shared state."""
    out = []
    for i in range(len(spec.thresholds)):
        alpha = spec.thresholds[i]
        if spec.direction == "sublevel":
            sub, _ = induced_subgraph(g, lambda v: spec.values[v] <= alpha)
        else:
            sub, _ = induced_subgraph(g, lambda v: spec.values[v] >= alpha)
        _, comps = connected_components(sub)
        if spec.complex_mode == "graph":
            cycles = sub.num_edges - sub.num_nodes + comps
        else:
            e_idx = {e: k for k, e in enumerate(sorted(sub.edges))}
            cols = [
                (1 << e_idx[(u, v)]) | (1 << e_idx[(u, w)]) | (1 << e_idx[(v, w)])
                for u, v, w in _triangles(sub)
            ]
            cycles = sub.num_edges - (sub.num_nodes - comps) - _gf2_rank(cols)
        out.append((comps, cycles))
    return out
