#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { CsvFormatError, groupByScheme, parseRateCsv } from "./csv.js";
import { renderFigure } from "./render.js";
import { FIGURE_IDS, resolveFigure } from "./spec.js";

export interface CliArgs {
  csv: string;
  figure: string;
  out: string;
}

/** Read one CSV, render one figure, write one SVG; returns the process exit code. */
export function run(args: CliArgs): number {
  let spec;
  try {
    spec = resolveFigure(args.figure);
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
  let text: string;
  try {
    text = readFileSync(args.csv, "utf-8");
  } catch (error) {
    console.error(`error: cannot read '${args.csv}': ${(error as Error).message}`);
    return 1;
  }
  let rows;
  try {
    rows = parseRateCsv(text);
  } catch (error) {
    if (error instanceof CsvFormatError) {
      console.error(`error: ${args.csv}: ${error.message}`);
      return 1;
    }
    throw error;
  }
  const mismatched = rows.find((row) => row.sweepParam !== spec.sweepParam);
  if (mismatched) {
    console.error(
      `warning: ${spec.id} plots '${spec.sweepParam}' but the CSV carries ` +
        `'${mismatched.sweepParam}'; rendering anyway`,
    );
  }
  const svg = renderFigure(spec, groupByScheme(rows));
  try {
    writeFileSync(args.out, svg, "utf-8");
  } catch (error) {
    console.error(`error: cannot write '${args.out}': ${(error as Error).message}`);
    return 1;
  }
  console.log(`${spec.id}: ${rows.length} rows -> ${args.out}`);
  return 0;
}

export function main(argv: string[]): number {
  const args = yargs(argv)
    .usage("Render an achievable-rate figure from a simulator CSV")
    .option("csv", { type: "string", demandOption: true, describe: "input CSV path" })
    .option("figure", {
      type: "string",
      demandOption: true,
      describe: `figure id (${FIGURE_IDS.join(", ")})`,
    })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .strict()
    .exitProcess(false)
    .parseSync();
  return run({ csv: args.csv, figure: args.figure, out: args.out });
}

const entry = process.argv[1];
if (entry && (entry.endsWith("cli.js") || entry.endsWith("irsrelay-figures"))) {
  process.exit(main(hideBin(process.argv)));
}
