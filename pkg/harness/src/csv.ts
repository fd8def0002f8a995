import { readFileSync } from "node:fs";

export interface FeatureTable {
  graphIds: number[];
  labels: number[];
  features: number[][]; // row-major, one row per graph
  columns: string[]; // feature column names, f_0..
}

/**
 * Parse a sawgrid feature CSV: header `graph_id,label,f_0,...`, one
 * numeric row per graph. No quoting in this format.
 */
export function parseFeatureCsv(text: string): FeatureTable {
  const lines = text.trim().split("\n");
  if (lines.length < 2) {
    throw new Error("feature CSV has no data rows");
  }
  const header = lines[0].split(",");
  if (header[0] !== "graph_id" || header[1] !== "label") {
    throw new Error(`unexpected CSV header: ${lines[0].slice(0, 60)}`);
  }
  const columns = header.slice(2);
  const graphIds: number[] = [];
  const labels: number[] = [];
  const features: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new Error(`row ${i} has ${cells.length} cells, expected ${header.length}`);
    }
    const row = cells.map(Number);
    if (row.some((x) => !Number.isFinite(x))) {
      throw new Error(`row ${i} contains a non-numeric value`);
    }
    graphIds.push(row[0]);
    labels.push(row[1]);
    features.push(row.slice(2));
  }
  return { graphIds, labels, features, columns };
}

export function loadFeatureCsv(path: string): FeatureTable {
  return parseFeatureCsv(readFileSync(path, "utf8"));
}

export interface ExportReport {
  dataset: string;
  summary: string;
  filtration: string[];
  graphs: number;
  no_dim1_graphs: number[];
  no_dim1_pct: number;
}

export function loadReport(path: string): ExportReport {
  return JSON.parse(readFileSync(path, "utf8")) as ExportReport;
}

/**
 * Slice the feature block by homology dimension. Exported rows are the
 * dimension-0 block followed by the dimension-1 block, equal halves.
 */
export function selectBetti(
  table: FeatureTable,
  betti: "0" | "1" | "both",
): FeatureTable {
  if (betti === "both") return table;
  const half = Math.floor(table.columns.length / 2);
  if (table.columns.length % 2 !== 0) {
    throw new Error("feature block has odd width; cannot split by dimension");
  }
  const lo = betti === "0" ? 0 : half;
  const hi = betti === "0" ? half : table.columns.length;
  return {
    graphIds: table.graphIds,
    labels: table.labels,
    features: table.features.map((row) => row.slice(lo, hi)),
    columns: table.columns.slice(lo, hi),
  };
}

/** Drop rows by graph id (e.g. graphs with no dimension-1 features). */
export function dropRows(table: FeatureTable, ids: number[]): FeatureTable {
  const excluded = new Set(ids);
  const keep = table.graphIds.map((id) => !excluded.has(id));
  return {
    graphIds: table.graphIds.filter((_, i) => keep[i]),
    labels: table.labels.filter((_, i) => keep[i]),
    features: table.features.filter((_, i) => keep[i]),
    columns: table.columns,
  };
}
