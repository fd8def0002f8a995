"""Simple undirected graphs and TUDataset-format benchmark ingestion."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path


class DatasetError(Exception):
    """Raised for missing, malformed, or inconsistent dataset files."""


class Graph:
    """Immutable simple undirected graph on nodes 0..num_nodes-1.

    Edges are stored as a frozenset of sorted (u, v) tuples; adjacency
    lists are rebuilt from the edge set at construction.
    """

    __slots__ = ("num_nodes", "edges", "adjacency")

    def __init__(self, num_nodes: int, edges):
        if num_nodes < 0:
            raise ValueError("num_nodes must be non-negative")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise ValueError(f"edge ({u},{v}) endpoint out of range")
            canon.add((u, v) if u < v else (v, u))
        adj = [[] for _ in range(num_nodes)]
        for u, v in sorted(canon):
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "num_nodes", num_nodes)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        # __slots__ plus the immutability guard break default pickling
        return (Graph, (self.num_nodes, sorted(self.edges)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.num_nodes == other.num_nodes
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.num_nodes, self.edges))

    def __repr__(self):
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


@dataclass(frozen=True)
class GraphDataset:
    """Ordered collection of graphs with 0-based contiguous class labels."""

    name: str
    graphs: tuple
    labels: tuple
    label_map: dict = field(default_factory=dict)  # original label -> internal
    dropped_self_loops: int = 0

    def __post_init__(self):
        if len(self.graphs) != len(self.labels):
            raise ValueError("graphs and labels length mismatch")

    def __len__(self):
        return len(self.graphs)

    @property
    def num_classes(self) -> int:
        return len(set(self.labels))


def _read_lines(path: Path):
    if not path.is_file():
        raise DatasetError(f"missing dataset file: {path}")
    with path.open() as f:
        return f.read().splitlines()


def _parse_int(token: str, path: Path, lineno: int) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise DatasetError(
            f"{path}:{lineno}: expected integer, got {token.strip()!r}"
        ) from None


def load_tudataset(directory, name: str) -> GraphDataset:
    """Load a TUDataset-style directory (<name>_A.txt etc.).

    Files use 1-indexed global node ids; in-memory graphs are 0-indexed
    per graph, nodes numbered in global-id order. Duplicate directed edge
    entries are merged into one undirected edge; self-loops are dropped
    and counted.
    """
    directory = Path(directory)
    ind_path = directory / f"{name}_graph_indicator.txt"
    a_path = directory / f"{name}_A.txt"
    lab_path = directory / f"{name}_graph_labels.txt"

    indicator = []
    for i, line in enumerate(_read_lines(ind_path), start=1):
        if line.strip():
            indicator.append(_parse_int(line, ind_path, i))
    if not indicator:
        raise DatasetError(f"empty graph indicator file: {ind_path}")

    graph_ids = sorted(set(indicator))
    if graph_ids != list(range(1, len(graph_ids) + 1)):
        raise DatasetError(f"{ind_path}: graph ids are not contiguous from 1")
    num_graphs = len(graph_ids)

    # global node id (1-based) -> (graph index, local node id)
    node_of = {}
    counts = [0] * num_graphs
    for gid_1based, g in enumerate(indicator, start=1):
        node_of[gid_1based] = (g - 1, counts[g - 1])
        counts[g - 1] += 1

    edge_sets = [set() for _ in range(num_graphs)]
    dropped = 0
    for i, line in enumerate(_read_lines(a_path), start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise DatasetError(f"{a_path}:{i}: expected 'u, v', got {line!r}")
        u = _parse_int(parts[0], a_path, i)
        v = _parse_int(parts[1], a_path, i)
        if u not in node_of or v not in node_of:
            raise DatasetError(f"{a_path}:{i}: node id out of range in edge ({u},{v})")
        gu, lu = node_of[u]
        gv, lv = node_of[v]
        if gu != gv:
            raise DatasetError(
                f"{a_path}:{i}: edge ({u},{v}) crosses graphs {gu + 1} and {gv + 1}"
            )
        if lu == lv:
            dropped += 1
            continue
        edge_sets[gu].add((min(lu, lv), max(lu, lv)))

    raw_labels = []
    for i, line in enumerate(_read_lines(lab_path), start=1):
        if line.strip():
            raw_labels.append(_parse_int(line, lab_path, i))
    if len(raw_labels) != num_graphs:
        raise DatasetError(
            f"{lab_path}: {len(raw_labels)} labels for {num_graphs} graphs"
        )

    label_map = {lab: i for i, lab in enumerate(sorted(set(raw_labels)))}
    labels = tuple(label_map[lab] for lab in raw_labels)
    graphs = tuple(Graph(counts[g], edge_sets[g]) for g in range(num_graphs))
    return GraphDataset(
        name=name,
        graphs=graphs,
        labels=labels,
        label_map=label_map,
        dropped_self_loops=dropped,
    )


def save_tudataset(dataset: GraphDataset, directory, name: str | None = None) -> None:
    """Write a dataset back to TUDataset text format (round-trip helper)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    name = name or dataset.name
    inv_label = {v: k for k, v in dataset.label_map.items()} or None

    indicator_lines = []
    edge_lines = []
    offset = 0
    for g_idx, g in enumerate(dataset.graphs, start=1):
        indicator_lines.extend([str(g_idx)] * g.num_nodes)
        for u, v in sorted(g.edges):
            gu, gv = u + 1 + offset, v + 1 + offset
            edge_lines.append(f"{gu}, {gv}")
            edge_lines.append(f"{gv}, {gu}")
        offset += g.num_nodes

    label_lines = [
        str(inv_label[lab] if inv_label else lab) for lab in dataset.labels
    ]
    (directory / f"{name}_graph_indicator.txt").write_text(
        "\n".join(indicator_lines) + "\n"
    )
    (directory / f"{name}_A.txt").write_text("\n".join(edge_lines) + "\n")
    (directory / f"{name}_graph_labels.txt").write_text("\n".join(label_lines) + "\n")


def induced_subgraph(g: Graph, keep) -> tuple[Graph, list[int]]:
    """Vertex-induced subgraph on nodes where keep(v) is true.

    Returns the subgraph and the new->old node index map.
    """
    kept = [v for v in range(g.num_nodes) if keep(v)]
    old_to_new = {old: new for new, old in enumerate(kept)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges
        if u in old_to_new and v in old_to_new
    ]
    return Graph(len(kept), edges), kept


def connected_components(g: Graph) -> tuple[list[int], int]:
    """BFS labelling: per-node component id and component count."""
    comp = [-1] * g.num_nodes
    count = 0
    for start in range(g.num_nodes):
        if comp[start] != -1:
            continue
        comp[start] = count
        q = deque([start])
        while q:
            v = q.popleft()
            for w in g.adjacency[v]:
                if comp[w] == -1:
                    comp[w] = count
                    q.append(w)
        count += 1
    return comp, count


def cycle_rank(g: Graph) -> int:
    """First Betti number of the graph as a 1-complex: |E| - |V| + #components."""
    _, c = connected_components(g)
    return g.num_edges - g.num_nodes + c
