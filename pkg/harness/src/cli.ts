#!/usr/bin/env node
import { appendFileSync, existsSync, writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { dropRows, loadFeatureCsv, loadReport, selectBetti } from "./csv.js";
import { RESULT_HEADER, evaluate, resultRow } from "./evaluate.js";

const argv = yargs(hideBin(process.argv))
  .usage("Evaluate a sawgrid feature CSV with a Random Forest protocol")
  .option("features", { type: "string", demandOption: true, describe: "feature CSV path" })
  .option("betti", { choices: ["0", "1", "both"] as const, default: "both" as const })
  .option("trees", { type: "number", default: 500 })
  .option("folds", { type: "number", default: 10 })
  .option("repeats", { type: "number", default: 30 })
  .option("test-fraction", { type: "number", default: 0.1 })
  .option("seed", { type: "number", default: 42 })
  .option("out", { type: "string", describe: "results CSV to append to" })
  .strict()
  .parseSync();

let table = loadFeatureCsv(argv.features);
const reportPath = `${argv.features}.report.json`;
let dataset = "unknown";
let filtration = "unknown";
let coveragePct = 100;
if (existsSync(reportPath)) {
  const report = loadReport(reportPath);
  dataset = report.dataset;
  filtration = report.filtration.join("+");
  if (argv.betti === "1") {
    // rows without dimension-1 features carry no signal for a B1-only run
    table = dropRows(table, report.no_dim1_graphs);
    coveragePct = 100 - report.no_dim1_pct;
  }
}
table = selectBetti(table, argv.betti);

const report = evaluate(table.features, table.labels, {
  nTrees: argv.trees,
  folds: argv.folds,
  repeats: argv.repeats,
  testFraction: argv["test-fraction"],
  seed: argv.seed,
});

const row = resultRow(dataset, filtration, argv.betti, report, coveragePct);
console.log(RESULT_HEADER);
console.log(row);
for (const r of report.repeats) {
  console.error(
    `repeat ${r.repeat}: mtry=${r.mtry} cv=${(100 * r.cvAccuracy).toFixed(1)} ` +
      `test=${(100 * r.testAccuracy).toFixed(1)}`,
  );
}

if (argv.out) {
  if (!existsSync(argv.out)) {
    writeFileSync(argv.out, RESULT_HEADER + "\n");
  }
  appendFileSync(argv.out, row + "\n");
}
