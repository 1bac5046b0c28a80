import { csvParse } from "d3-dsv";

/** Column layout produced by the simulator CLI. */
export const REQUIRED_COLUMNS = [
  "experiment",
  "scheme",
  "sweep_param",
  "sweep_value",
  "trials",
  "mean_rate_bps_hz",
  "std_rate_bps_hz",
  "seed",
] as const;

export class CsvFormatError extends Error {}

export interface RateRow {
  experiment: string;
  scheme: string;
  sweepParam: string;
  sweepValue: number;
  trials: number;
  meanRate: number;
  stdRate: number;
  seed: number;
}

export interface Series {
  scheme: string;
  points: Array<{ x: number; y: number; std: number; trials: number }>;
}

function toNumber(raw: string | undefined, column: string, line: number): number {
  const value = Number(raw);
  if (raw === undefined || raw.trim() === "" || Number.isNaN(value)) {
    throw new CsvFormatError(`row ${line}: '${column}' is not a number (got '${raw ?? ""}')`);
  }
  return value;
}

/** Parse simulator CSV text, validating the exact column set. */
export function parseRateCsv(text: string): RateRow[] {
  const table = csvParse(text);
  for (const column of REQUIRED_COLUMNS) {
    if (!table.columns.includes(column)) {
      throw new CsvFormatError(`missing column '${column}'`);
    }
  }
  return table.map((row, index) => {
    const line = index + 2; // header occupies line 1
    return {
      experiment: row.experiment ?? "",
      scheme: row.scheme ?? "",
      sweepParam: row.sweep_param ?? "",
      sweepValue: toNumber(row.sweep_value, "sweep_value", line),
      trials: toNumber(row.trials, "trials", line),
      meanRate: toNumber(row.mean_rate_bps_hz, "mean_rate_bps_hz", line),
      stdRate: toNumber(row.std_rate_bps_hz, "std_rate_bps_hz", line),
      seed: toNumber(row.seed, "seed", line),
    };
  });
}

/** One plot series per scheme, points ordered by sweep value. */
export function groupByScheme(rows: RateRow[]): Series[] {
  const byScheme = new Map<string, Series>();
  for (const row of rows) {
    let series = byScheme.get(row.scheme);
    if (!series) {
      series = { scheme: row.scheme, points: [] };
      byScheme.set(row.scheme, series);
    }
    series.points.push({ x: row.sweepValue, y: row.meanRate, std: row.stdRate, trials: row.trials });
  }
  const list = [...byScheme.values()];
  for (const series of list) {
    series.points.sort((a, b) => a.x - b.x);
  }
  return list.sort((a, b) => a.scheme.localeCompare(b.scheme));
}
