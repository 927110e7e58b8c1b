/* Tabular data loading. Supports both CLI output formats: CSV with a header
 * row, and JSON {"columns": [...], "rows": [[...], ...]}. Rows come back as
 * column-keyed records; column names are cross-checked against the sidecar. */

import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { Meta, SchemaError } from "./meta.js";

export type Row = Record<string, number | string>;

export function loadRows(dataPath: string, meta: Meta): Row[] {
  const raw = readFileSync(dataPath, "utf8");
  let columns: string[];
  let rows: Row[];
  if (dataPath.endsWith(".json")) {
    const obj = JSON.parse(raw) as { columns: string[]; rows: (number | string)[][] };
    columns = obj.columns;
    rows = obj.rows.map((r) => Object.fromEntries(columns.map((c, i) => [c, r[i]])));
  } else {
    const parsed = Papa.parse<Row>(raw, {
      header: true,
      dynamicTyping: true,
      skipEmptyLines: true,
    });
    if (parsed.errors.length > 0) {
      throw new SchemaError(`${dataPath}: ${parsed.errors[0].message}`);
    }
    columns = parsed.meta.fields ?? [];
    rows = parsed.data;
  }
  if (JSON.stringify(columns) !== JSON.stringify(meta.columns)) {
    throw new SchemaError(
      `${dataPath}: columns [${columns}] do not match sidecar [${meta.columns}]`,
    );
  }
  return rows;
}

export function num(row: Row, col: string): number {
  const v = row[col];
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new SchemaError(`non-numeric value ${v} in column ${col}`);
  }
  return v;
}
