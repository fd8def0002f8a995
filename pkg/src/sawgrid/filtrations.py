"""Node filtration functions driving sublevel/superlevel filtrations."""

from __future__ import annotations

from collections import deque

import numpy as np

from .graph import Graph

FILTRATION_KINDS = (
    "degree",
    "closeness",
    "betweenness",
    "eccentricity",
    "hub",
    "authority",
    "forman_ricci",
)

HITS_TOL = 1e-10
HITS_MAX_ITER = 1000


class HITSConvergenceError(Exception):
    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"HITS power iteration did not converge (residual {residual:.3e})")


def _bfs_distances(g: Graph, source: int) -> list[int]:
    """Unweighted shortest-path distances from source; -1 if unreachable."""
    dist = [-1] * g.num_nodes
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def degree_values(g: Graph) -> list[float]:
    return [float(g.degree(v)) for v in range(g.num_nodes)]


def closeness_values(g: Graph) -> list[float]:
    """Per-component closeness: (|C|-1) / sum of distances within the component."""
    out = [0.0] * g.num_nodes
    for v in range(g.num_nodes):
        dist = _bfs_distances(g, v)
        reach = [d for d in dist if d >= 0]
        total = sum(reach)
        if total > 0:
            out[v] = (len(reach) - 1) / total
    return out


def eccentricity_values(g: Graph) -> list[float]:
    """Max distance to any node in v's component; 0 for isolated nodes."""
    out = [0.0] * g.num_nodes
    for v in range(g.num_nodes):
        dist = _bfs_distances(g, v)
        out[v] = float(max(d for d in dist if d >= 0))
    return out


def betweenness_values(g: Graph) -> list[float]:
    """Brandes' exact algorithm, unweighted, unnormalized, undirected."""
    cb = [0.0] * g.num_nodes
    for s in range(g.num_nodes):
        stack = []
        pred = [[] for _ in range(g.num_nodes)]
        sigma = [0] * g.num_nodes
        dist = [-1] * g.num_nodes
        sigma[s] = 1
        dist[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            stack.append(v)
            for w in g.adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    q.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    pred[w].append(v)
        delta = [0.0] * g.num_nodes
        while stack:
            w = stack.pop()
            for v in pred[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    # each unordered pair was counted from both endpoints
    return [c / 2.0 for c in cb]


def hits_values(g: Graph) -> list[float]:
    """Dominant adjacency eigenvector by power iteration, scaled to max 1.

    Hub and authority scores coincide on undirected graphs. Graphs with
    no edges get all-zero scores.
    """
    if g.num_edges == 0:
        return [0.0] * g.num_nodes
    adj = np.zeros((g.num_nodes, g.num_nodes))
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = 1.0
    x = np.ones(g.num_nodes)
    x /= x.max()
    for _ in range(HITS_MAX_ITER):
        # shifted iteration (A + I): same dominant eigenvector, but no
        # sign oscillation on bipartite graphs
        y = adj @ x + x
        m = y.max()
        if m == 0:
            return [0.0] * g.num_nodes
        y /= m
        residual = float(np.abs(y - x).max())
        x = y
        if residual < HITS_TOL:
            return [float(val) for val in x]
    raise HITSConvergenceError(residual)


def forman_ricci_values(g: Graph) -> list[float]:
    """Mean over incident edges of F(e) = 4 - deg(u) - deg(v); 0 if isolated."""
    out = [0.0] * g.num_nodes
    for v in range(g.num_nodes):
        nbrs = g.adjacency[v]
        if not nbrs:
            continue
        dv = len(nbrs)
        out[v] = sum(4.0 - dv - g.degree(w) for w in nbrs) / dv
    return out


_DISPATCH = {
    "degree": degree_values,
    "closeness": closeness_values,
    "betweenness": betweenness_values,
    "eccentricity": eccentricity_values,
    "hub": hits_values,
    "authority": hits_values,
    "forman_ricci": forman_ricci_values,
}


def compute_filtration(g: Graph, kind: str) -> list[float]:
    """One finite value per node for the named filtration kind."""
    if g.num_nodes == 0:
        raise ValueError("filtration of an empty graph is undefined")
    try:
        fn = _DISPATCH[kind]
    except KeyError:
        raise ValueError(
            f"unknown filtration kind {kind!r}; expected one of {FILTRATION_KINDS}"
        ) from None
    return fn(g)
