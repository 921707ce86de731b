import * as fs from "fs";
import Papa from "papaparse";

/** One row of the harness sweep CSV. */
export interface HarnessRow {
  scheme: string;
  alpha: number;
  beta: number;
  n: number;
  r: number;
  m: number;
  trials: number;
  success_frac: number;
  ci_halfwidth: number;
  median_rel_err: number;
  mean_samples: number;
  seconds: number;
}

export const REQUIRED_COLUMNS: (keyof HarnessRow)[] = [
  "scheme", "alpha", "beta", "n", "r", "m", "trials", "success_frac",
  "ci_halfwidth", "median_rel_err", "mean_samples", "seconds",
];

const NUMERIC_COLUMNS = REQUIRED_COLUMNS.filter((c) => c !== "scheme");

export class CsvSchemaError extends Error {}

/** Parse a harness CSV string; rejects empty input and missing columns
 * (the error names the first missing field). */
export function parseHarnessCsv(text: string): HarnessRow[] {
  if (text.trim() === "") {
    throw new CsvSchemaError("CSV is empty: no data rows");
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  for (const col of REQUIRED_COLUMNS) {
    if (!fields.includes(col)) {
      throw new CsvSchemaError(`missing required column: ${col}`);
    }
  }
  if (parsed.data.length === 0) {
    throw new CsvSchemaError("CSV has a header but no data rows");
  }
  return parsed.data.map((raw, i) => {
    const row: Partial<HarnessRow> = { scheme: raw.scheme };
    for (const col of NUMERIC_COLUMNS) {
      const value = Number(raw[col]);
      if (!Number.isFinite(value) && raw[col] !== "inf") {
        throw new CsvSchemaError(
          `row ${i + 1}: column ${col} is not numeric: ${raw[col]}`);
      }
      (row as Record<string, unknown>)[col] =
        raw[col] === "inf" ? Infinity : value;
    }
    return row as HarnessRow;
  });
}

export function readHarnessCsv(path: string): HarnessRow[] {
  if (!fs.existsSync(path)) {
    throw new CsvSchemaError(`CSV file not found: ${path}`);
  }
  const text = fs.readFileSync(path, "utf8");
  if (text.trim() === "") {
    throw new CsvSchemaError(`CSV file is empty: ${path}`);
  }
  return parseHarnessCsv(text);
}
