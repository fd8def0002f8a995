export { seededRandom, deriveSeed, shuffle, randInt, type Rng } from "./rng.js";
export {
  parseFeatureCsv,
  loadFeatureCsv,
  loadReport,
  selectBetti,
  dropRows,
  type FeatureTable,
  type ExportReport,
} from "./csv.js";
export { trainTree, predictTree, type TreeNode, type TreeParams } from "./tree.js";
export {
  trainForest,
  predictForest,
  accuracy,
  type Forest,
  type ForestParams,
} from "./forest.js";
export { stratifiedHoldout, stratifiedFolds } from "./split.js";
export {
  evaluate,
  resultRow,
  RESULT_HEADER,
  type EvalConfig,
  type EvalReport,
  type RepeatResult,
} from "./evaluate.js";
