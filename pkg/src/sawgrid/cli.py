"""Command-line pipeline: ingestion -> filtration -> persistence -> features.

Verbs: info (dataset statistics), diagram (inspect one graph), features
(export one CSV row of topological features per graph).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import filtrations, persistence, saw
from .graph import DatasetError, load_tudataset
from .mpgf import compute_mpgf2, superlevel_mpgf2
from .persistence import FiltrationSpec, make_thresholds

log = logging.getLogger("sawgrid")


@dataclass
class RunConfig:
    dataset_dir: str
    name: str
    summary: str                  # "saw" | "mpgf"
    filtration: list
    length: int = 100
    grid: tuple = (10, 10)
    mode: str = "graph"
    direction: str = "sublevel"
    scope: str = "per-graph"      # "per-graph" | "per-dataset"
    out: str = "features.csv"
    workers: int = 1

    def validate(self):
        if self.summary == "saw" and len(self.filtration) != 1:
            raise ValueError("saw summary requires exactly one --filtration")
        if self.summary == "mpgf" and len(self.filtration) < 2:
            raise ValueError("mpgf summary requires at least two --filtration")
        for kind in self.filtration:
            if kind not in filtrations.FILTRATION_KINDS:
                raise ValueError(f"unknown filtration kind {kind!r}")


def _fmt(x) -> str:
    return f"{float(x):.10g}"


def _thresholds_for(values, m, scope_range):
    if scope_range is None:
        return make_thresholds(values, m)
    lo, hi = scope_range
    if lo == hi:
        return (float(lo), float(lo) + 1.0)
    import numpy as np
    return tuple(float(t) for t in np.linspace(lo, hi, m))


def _saw_row(args):
    g, config, scope_ranges = args
    kind = config.filtration[0]
    values = filtrations.compute_filtration(g, kind)
    thresholds = _thresholds_for(values, config.length, scope_ranges[kind])
    spec = FiltrationSpec(values, thresholds, config.direction, config.mode)
    pd0 = persistence.persistence_dim0(g, spec)
    pd1 = persistence.persistence_dim1(g, spec)
    lam = saw.default_lag(thresholds)
    s0 = saw.saw_function(pd0, lam)
    s1 = saw.saw_function(pd1, lam)
    feats = saw.signature(s0, config.length) + saw.signature(s1, config.length)
    return feats, len(pd1.pairs) == 0


def _mpgf_row(args):
    g, config, scope_ranges = args
    kind_f, kind_g = config.filtration[0], config.filtration[1]
    f_values = filtrations.compute_filtration(g, kind_f)
    g_values = filtrations.compute_filtration(g, kind_g)
    m1, m2 = config.grid
    t_f = _thresholds_for(f_values, m1, scope_ranges[kind_f])
    t_g = _thresholds_for(g_values, m2, scope_ranges[kind_g])
    fn = compute_mpgf2 if config.direction == "sublevel" else superlevel_mpgf2
    grid = fn(g, f_values, g_values, m1, m2, config.mode,
              thresholds_f=t_f, thresholds_g=t_g)
    feats = grid.flatten()
    return feats, int(grid.values1.max()) == 0


def cmd_features(config: RunConfig) -> int:
    config.validate()
    t0 = time.monotonic()
    dataset = load_tudataset(config.dataset_dir, config.name)
    log.info("ingestion: %d graphs in %.2fs", len(dataset), time.monotonic() - t0)

    scope_ranges = {kind: None for kind in config.filtration}
    t0 = time.monotonic()
    if config.scope == "per-dataset":
        for kind in config.filtration:
            lo, hi = float("inf"), float("-inf")
            for g in dataset.graphs:
                vals = filtrations.compute_filtration(g, kind)
                lo, hi = min(lo, min(vals)), max(hi, max(vals))
            scope_ranges[kind] = (lo, hi)
        log.info("dataset-scope ranges in %.2fs", time.monotonic() - t0)

    row_fn = _saw_row if config.summary == "saw" else _mpgf_row
    work = [(g, config, scope_ranges) for g in dataset.graphs]

    t0 = time.monotonic()
    results = [None] * len(work)
    failures = []
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for i, res in enumerate(pool.map(row_fn, work)):
                results[i] = res
    else:
        for i, item in enumerate(work):
            try:
                results[i] = row_fn(item)
            except Exception as exc:  # skip the row, keep going
                log.error("graph %d failed: %s", i, exc)
                failures.append(i)
    log.info("features: %d graphs in %.2fs", len(work), time.monotonic() - t0)

    n_feats = None
    flagged = []
    lines = []
    for i, res in enumerate(results):
        if res is None:
            continue
        feats, no_dim1 = res
        if n_feats is None:
            n_feats = len(feats)
            lines.append(
                "graph_id,label," + ",".join(f"f_{k}" for k in range(n_feats))
            )
        if no_dim1:
            flagged.append(i)
        lines.append(
            f"{i},{dataset.labels[i]}," + ",".join(_fmt(x) for x in feats)
        )
    with open(config.out, "w") as f:
        f.write("\n".join(lines) + "\n")

    report = {
        "dataset": config.name,
        "summary": config.summary,
        "filtration": config.filtration,
        "graphs": len(dataset),
        "rows_written": len(dataset) - len(failures),
        "failed_graphs": failures,
        "no_dim1_graphs": flagged,
        "no_dim1_pct": round(100.0 * len(flagged) / max(len(dataset), 1), 2),
    }
    with open(config.out + ".report.json", "w") as f:
        json.dump(report, f, indent=2)
    if failures:
        log.error("%d graphs failed; see log above", len(failures))
        return 1
    return 0


def cmd_info(dataset_dir: str, name: str) -> int:
    dataset = load_tudataset(dataset_dir, name)
    n = len(dataset)
    mean_nodes = sum(g.num_nodes for g in dataset.graphs) / n
    mean_edges = sum(g.num_edges for g in dataset.graphs) / n
    print(f"{dataset.name} {n} {dataset.num_classes} "
          f"{mean_nodes:.2f} {mean_edges:.2f}")
    if dataset.dropped_self_loops:
        print(f"dropped self-loops: {dataset.dropped_self_loops}", file=sys.stderr)
    return 0


def cmd_diagram(dataset_dir: str, name: str, graph_id: int, kind: str,
                length: int = 100, mode: str = "graph",
                direction: str = "sublevel") -> int:
    dataset = load_tudataset(dataset_dir, name)
    if not (0 <= graph_id < len(dataset)):
        raise ValueError(f"graph id {graph_id} out of range (0..{len(dataset) - 1})")
    g = dataset.graphs[graph_id]
    values = filtrations.compute_filtration(g, kind)
    thresholds = make_thresholds(values, length)
    spec = FiltrationSpec(values, thresholds, direction, mode)
    pd0 = persistence.persistence_dim0(g, spec)
    pd1 = persistence.persistence_dim1(g, spec)
    c0, c1 = persistence.betti_curves(g, spec)

    print(f"# graph {graph_id} ({g.num_nodes} nodes, {g.num_edges} edges), "
          f"{kind} {direction} {mode}")
    print("# PD0")
    print(pd0.to_text() or "# (empty)")
    print("# PD1")
    print(pd1.to_text() or "# (empty)")
    counts0 = saw.birth_death_counts(pd0, thresholds)
    counts1 = saw.birth_death_counts(pd1, thresholds)
    print("# threshold B0 B1 tension0 tension1")
    for i, t in enumerate(thresholds):
        print(f"{t:.6g} {c0.values[i]} {c1.values[i]} "
              f"{saw.tension(counts0, i)} {saw.tension(counts1, i)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sawgrid",
        description="Topological graph features: saw signatures and "
                    "multi-persistence grids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="dataset statistics")
    p_info.add_argument("--dataset-dir", required=True)
    p_info.add_argument("--name", required=True)

    p_diag = sub.add_parser("diagram", help="print diagrams for one graph")
    p_diag.add_argument("--dataset-dir", required=True)
    p_diag.add_argument("--name", required=True)
    p_diag.add_argument("--graph-id", type=int, required=True)
    p_diag.add_argument("--filtration", required=True,
                        choices=filtrations.FILTRATION_KINDS)
    p_diag.add_argument("--length", type=int, default=100)
    p_diag.add_argument("--mode", default="graph", choices=("graph", "clique2"))
    p_diag.add_argument("--direction", default="sublevel",
                        choices=("sublevel", "superlevel"))

    p_feat = sub.add_parser("features", help="export feature CSV")
    p_feat.add_argument("--dataset-dir", required=True)
    p_feat.add_argument("--name", required=True)
    p_feat.add_argument("--summary", required=True, choices=("saw", "mpgf"))
    p_feat.add_argument("--filtration", action="append", required=True,
                        choices=filtrations.FILTRATION_KINDS)
    p_feat.add_argument("--length", type=int, default=100)
    p_feat.add_argument("--grid", default="10x10")
    p_feat.add_argument("--mode", default="graph", choices=("graph", "clique2"))
    p_feat.add_argument("--direction", default="sublevel",
                        choices=("sublevel", "superlevel"))
    p_feat.add_argument("--scope", default="per-graph",
                        choices=("per-graph", "per-dataset"))
    p_feat.add_argument("--out", default="features.csv")
    p_feat.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "info":
            return cmd_info(args.dataset_dir, args.name)
        if args.command == "diagram":
            return cmd_diagram(args.dataset_dir, args.name, args.graph_id,
                               args.filtration, args.length, args.mode,
                               args.direction)
        m1, _, m2 = args.grid.partition("x")
        config = RunConfig(
            dataset_dir=args.dataset_dir,
            name=args.name,
            summary=args.summary,
            filtration=args.filtration,
            length=args.length,
            grid=(int(m1), int(m2 or m1)),
            mode=args.mode,
            direction=args.direction,
            scope=args.scope,
            out=args.out,
            workers=args.workers,
        )
        return cmd_features(config)
    except (DatasetError, ValueError) as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
