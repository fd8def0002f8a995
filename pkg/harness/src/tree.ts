import { type Rng, shuffle } from "./rng.js";

export interface TreeParams {
  mtry: number; // features sampled per node
  maxDepth: number;
  minSamplesSplit: number;
}

interface LeafNode {
  kind: "leaf";
  vote: number;
}

interface SplitNode {
  kind: "split";
  feature: number;
  threshold: number; // go left when x[feature] <= threshold
  left: TreeNode;
  right: TreeNode;
}

export type TreeNode = LeafNode | SplitNode;

function giniImpurity(counts: Map<number, number>, total: number): number {
  let sumSq = 0;
  for (const c of counts.values()) sumSq += c * c;
  return 1 - sumSq / (total * total);
}

function majority(labels: number[], indices: number[]): number {
  const counts = new Map<number, number>();
  for (const i of indices) {
    counts.set(labels[i], (counts.get(labels[i]) ?? 0) + 1);
  }
  let best = -1;
  let bestCount = -1;
  for (const [label, count] of counts) {
    // deterministic tie-break: smaller label wins
    if (count > bestCount || (count === bestCount && label < best)) {
      best = label;
      bestCount = count;
    }
  }
  return best;
}

function bestSplit(
  X: number[][],
  y: number[],
  indices: number[],
  featureIds: number[],
): { feature: number; threshold: number; gain: number } | null {
  const total = indices.length;
  const parentCounts = new Map<number, number>();
  for (const i of indices) {
    parentCounts.set(y[i], (parentCounts.get(y[i]) ?? 0) + 1);
  }
  const parentGini = giniImpurity(parentCounts, total);
  let best: { feature: number; threshold: number; gain: number } | null = null;

  for (const f of featureIds) {
    const order = [...indices].sort((a, b) => X[a][f] - X[b][f]);
    const leftCounts = new Map<number, number>();
    const rightCounts = new Map<number, number>(parentCounts);
    for (let k = 0; k < order.length - 1; k++) {
      const i = order[k];
      leftCounts.set(y[i], (leftCounts.get(y[i]) ?? 0) + 1);
      rightCounts.set(y[i], rightCounts.get(y[i])! - 1);
      const v = X[i][f];
      const next = X[order[k + 1]][f];
      if (v === next) continue; // cannot separate equal values
      const nLeft = k + 1;
      const nRight = total - nLeft;
      const gain =
        parentGini -
        (nLeft / total) * giniImpurity(leftCounts, nLeft) -
        (nRight / total) * giniImpurity(rightCounts, nRight);
      if (best === null || gain > best.gain + 1e-12) {
        best = { feature: f, threshold: (v + next) / 2, gain };
      }
    }
  }
  return best;
}

function growNode(
  X: number[][],
  y: number[],
  indices: number[],
  params: TreeParams,
  depth: number,
  rng: Rng,
): TreeNode {
  const first = y[indices[0]];
  const pure = indices.every((i) => y[i] === first);
  if (
    pure ||
    depth >= params.maxDepth ||
    indices.length < params.minSamplesSplit
  ) {
    return { kind: "leaf", vote: majority(y, indices) };
  }

  const nFeatures = X[0].length;
  const pool = shuffle(
    Array.from({ length: nFeatures }, (_, i) => i),
    rng,
  );
  const sampled = pool.slice(0, Math.min(params.mtry, nFeatures)).sort((a, b) => a - b);
  const split = bestSplit(X, y, indices, sampled);
  if (split === null || split.gain <= 1e-12) {
    return { kind: "leaf", vote: majority(y, indices) };
  }

  const leftIdx: number[] = [];
  const rightIdx: number[] = [];
  for (const i of indices) {
    (X[i][split.feature] <= split.threshold ? leftIdx : rightIdx).push(i);
  }
  return {
    kind: "split",
    feature: split.feature,
    threshold: split.threshold,
    left: growNode(X, y, leftIdx, params, depth + 1, rng),
    right: growNode(X, y, rightIdx, params, depth + 1, rng),
  };
}

export function trainTree(
  X: number[][],
  y: number[],
  indices: number[],
  params: TreeParams,
  rng: Rng,
): TreeNode {
  return growNode(X, y, indices, params, 0, rng);
}

export function predictTree(node: TreeNode, x: number[]): number {
  while (node.kind === "split") {
    node = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return node.vote;
}
