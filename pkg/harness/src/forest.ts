import { type Rng, randInt } from "./rng.js";
import { type TreeNode, type TreeParams, predictTree, trainTree } from "./tree.js";

export interface ForestParams {
  nTrees: number;
  mtry: number;
  maxDepth?: number; // default 32, effectively unlimited for these sizes
  minSamplesSplit?: number; // default 2
}

export interface Forest {
  trees: TreeNode[];
}

export function trainForest(
  X: number[][],
  y: number[],
  params: ForestParams,
  rng: Rng,
): Forest {
  const treeParams: TreeParams = {
    mtry: params.mtry,
    maxDepth: params.maxDepth ?? 32,
    minSamplesSplit: params.minSamplesSplit ?? 2,
  };
  const n = X.length;
  const trees: TreeNode[] = [];
  for (let t = 0; t < params.nTrees; t++) {
    const bootstrap: number[] = [];
    for (let i = 0; i < n; i++) bootstrap.push(randInt(rng, n));
    trees.push(trainTree(X, y, bootstrap, treeParams, rng));
  }
  return { trees };
}

export function predictForest(forest: Forest, x: number[]): number {
  const votes = new Map<number, number>();
  for (const tree of forest.trees) {
    const label = predictTree(tree, x);
    votes.set(label, (votes.get(label) ?? 0) + 1);
  }
  let best = -1;
  let bestCount = -1;
  for (const [label, count] of votes) {
    if (count > bestCount || (count === bestCount && label < best)) {
      best = label;
      bestCount = count;
    }
  }
  return best;
}

export function accuracy(forest: Forest, X: number[][], y: number[]): number {
  let hits = 0;
  for (let i = 0; i < X.length; i++) {
    if (predictForest(forest, X[i]) === y[i]) hits++;
  }
  return hits / X.length;
}
