import { type Rng, shuffle } from "./rng.js";

function byClass(labels: number[], indices: number[]): Map<number, number[]> {
  const groups = new Map<number, number[]>();
  for (const i of indices) {
    const g = groups.get(labels[i]);
    if (g) g.push(i);
    else groups.set(labels[i], [i]);
  }
  return groups;
}

/**
 * Stratified holdout: shuffles within each class, then sends
 * round(|class| * testFraction) samples to the test side (at least one
 * per class when the class has two or more members).
 */
export function stratifiedHoldout(
  labels: number[],
  testFraction: number,
  rng: Rng,
): { train: number[]; test: number[] } {
  const all = Array.from({ length: labels.length }, (_, i) => i);
  const train: number[] = [];
  const test: number[] = [];
  for (const group of byClass(labels, all).values()) {
    shuffle(group, rng);
    let nTest = Math.round(group.length * testFraction);
    if (nTest === 0 && group.length >= 2) nTest = 1;
    test.push(...group.slice(0, nTest));
    train.push(...group.slice(nTest));
  }
  train.sort((a, b) => a - b);
  test.sort((a, b) => a - b);
  return { train, test };
}

/** Stratified k-fold partition of the given indices. */
export function stratifiedFolds(
  labels: number[],
  indices: number[],
  k: number,
  rng: Rng,
): number[][] {
  const folds: number[][] = Array.from({ length: k }, () => []);
  for (const group of byClass(labels, indices).values()) {
    shuffle(group, rng);
    group.forEach((idx, pos) => folds[pos % k].push(idx));
  }
  return folds.map((f) => f.sort((a, b) => a - b));
}
