import random

import pytest

from sawgrid import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)


@pytest.fixture
def tiny_dataset_dir(tmp_path):
    """Three small graphs in TUDataset text form: a path, a 5-cycle, a star."""
    # graph 1: path 1-2-3; graph 2: 5-cycle on 4..8; graph 3: star center 9
    (tmp_path / "TINY_graph_indicator.txt").write_text(
        "\n".join(["1"] * 3 + ["2"] * 5 + ["3"] * 4) + "\n"
    )
    edges = [(1, 2), (2, 3),
             (4, 5), (5, 6), (6, 7), (7, 8), (8, 4),
             (9, 10), (9, 11), (9, 12)]
    lines = []
    for u, v in edges:
        lines.append(f"{u}, {v}")
        lines.append(f"{v}, {u}")
    (tmp_path / "TINY_A.txt").write_text("\n".join(lines) + "\n")
    (tmp_path / "TINY_graph_labels.txt").write_text("1\n-1\n1\n")
    return tmp_path
