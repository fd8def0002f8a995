import { trainForest, accuracy } from "./forest.js";
import { deriveSeed, seededRandom } from "./rng.js";
import { stratifiedFolds, stratifiedHoldout } from "./split.js";

export interface EvalConfig {
  nTrees?: number; // default 500
  folds?: number; // default 10
  repeats?: number; // default 30; 10 for desk-scale runs
  testFraction?: number; // default 0.1 (stratified holdout per repeat)
  seed?: number; // default 42
  mtryOffsets?: number[]; // default -3..3 around sqrt(n_features)
}

export interface RepeatResult {
  repeat: number;
  mtry: number;
  cvAccuracy: number;
  testAccuracy: number;
}

export interface EvalReport {
  meanAccuracy: number;
  stdAccuracy: number;
  repeats: RepeatResult[];
  constantFeatures: boolean;
}

function defaults(config: EvalConfig): Required<EvalConfig> {
  return {
    nTrees: config.nTrees ?? 500,
    folds: config.folds ?? 10,
    repeats: config.repeats ?? 30,
    testFraction: config.testFraction ?? 0.1,
    seed: config.seed ?? 42,
    mtryOffsets: config.mtryOffsets ?? [-3, -2, -1, 0, 1, 2, 3],
  };
}

function mtryCandidates(nFeatures: number, offsets: number[]): number[] {
  const base = Math.round(Math.sqrt(nFeatures));
  const out = new Set<number>();
  for (const k of offsets) {
    out.add(Math.min(Math.max(base + k, 1), nFeatures));
  }
  return [...out].sort((a, b) => a - b);
}

function take<T>(arr: T[], indices: number[]): T[] {
  return indices.map((i) => arr[i]);
}

/**
 * Repeated holdout evaluation. Each repeat draws a stratified
 * train/test split, selects mtry by k-fold cross-validation on the
 * training side, refits on the whole training side with the winner,
 * and scores the untouched test side. Deterministic given the seed.
 */
export function evaluate(
  X: number[][],
  y: number[],
  config: EvalConfig = {},
): EvalReport {
  const cfg = defaults(config);
  if (cfg.folds < 2) throw new Error("folds must be at least 2");
  if (cfg.repeats < 1) throw new Error("repeats must be at least 1");
  if (X.length !== y.length || X.length === 0) {
    throw new Error("feature matrix and labels must be non-empty and aligned");
  }
  if (new Set(y).size < 2) {
    throw new Error("evaluation needs at least two classes");
  }
  const constantFeatures = X.every((row) =>
    row.every((v, j) => v === X[0][j]),
  );
  if (constantFeatures) {
    console.warn("warning: constant feature matrix; accuracy will be chance level");
  }

  const candidates = mtryCandidates(X[0].length, cfg.mtryOffsets);
  const repeats: RepeatResult[] = [];

  for (let r = 0; r < cfg.repeats; r++) {
    const rng = seededRandom(deriveSeed(cfg.seed, r));
    const { train, test } = stratifiedHoldout(y, cfg.testFraction, rng);
    const folds = stratifiedFolds(y, train, cfg.folds, rng);

    let bestMtry = candidates[0];
    let bestCv = -1;
    for (const mtry of candidates) {
      let cvSum = 0;
      let cvCount = 0;
      for (let f = 0; f < folds.length; f++) {
        const validation = folds[f];
        if (validation.length === 0) continue;
        const fit = train.filter((i) => !folds[f].includes(i));
        const forest = trainForest(
          take(X, fit),
          take(y, fit),
          { nTrees: cfg.nTrees, mtry },
          rng,
        );
        cvSum += accuracy(forest, take(X, validation), take(y, validation));
        cvCount++;
      }
      const cv = cvSum / cvCount;
      if (cv > bestCv + 1e-12) {
        bestCv = cv;
        bestMtry = mtry;
      }
    }

    const forest = trainForest(
      take(X, train),
      take(y, train),
      { nTrees: cfg.nTrees, mtry: bestMtry },
      rng,
    );
    repeats.push({
      repeat: r,
      mtry: bestMtry,
      cvAccuracy: bestCv,
      testAccuracy: accuracy(forest, take(X, test), take(y, test)),
    });
  }

  const accs = repeats.map((r) => r.testAccuracy);
  const mean = accs.reduce((a, b) => a + b, 0) / accs.length;
  const variance =
    accs.reduce((a, b) => a + (b - mean) * (b - mean), 0) / accs.length;
  return {
    meanAccuracy: mean,
    stdAccuracy: Math.sqrt(variance),
    repeats,
    constantFeatures,
  };
}

/** One line of the results CSV, accuracies in percent. */
export function resultRow(
  dataset: string,
  filtration: string,
  betti: string,
  report: EvalReport,
  coveragePct: number,
): string {
  const mean = (100 * report.meanAccuracy).toFixed(1);
  const std = (100 * report.stdAccuracy).toFixed(1);
  return `${dataset},${filtration},${betti},${mean},${std},${coveragePct.toFixed(1)}`;
}

export const RESULT_HEADER = "dataset,filtration,betti,mean_acc,std_acc,coverage_pct";
