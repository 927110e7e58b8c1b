/* Sidecar loading and validation. Every data file <name>.csv|json emitted by
 * the nongauss CLI comes with <name>.meta.json; we refuse to plot anything
 * whose sidecar is missing, malformed, or from an unsupported schema. */

import { readFileSync } from "node:fs";
import { z } from "zod";

export const SUPPORTED_SCHEMA_VERSION = 1;
export const SUPPORTED_ARTIFACT_VERSION = 1;

export class SchemaError extends Error {}

const metaSchema = z
  .object({
    artifact: z.string(),
    artifact_version: z.number().int(),
    schema_version: z.number().int(),
    columns: z.array(z.string()).min(1),
    format: z.enum(["csv", "json"]),
    seed: z.number().int(),
    config: z.record(z.unknown()),
  })
  .passthrough();

export type Meta = z.infer<typeof metaSchema> & Record<string, unknown>;

export function sidecarPath(dataPath: string): string {
  return dataPath.replace(/\.(csv|json)$/, "") + ".meta.json";
}

export function loadMeta(dataPath: string): Meta {
  const path = sidecarPath(dataPath);
  let raw: string;
  try {
    raw = readFileSync(path, "utf8");
  } catch {
    throw new SchemaError(`missing sidecar ${path}`);
  }
  let obj: unknown;
  try {
    obj = JSON.parse(raw);
  } catch (err) {
    throw new SchemaError(`sidecar ${path} is not valid JSON: ${err}`);
  }
  const parsed = metaSchema.safeParse(obj);
  if (!parsed.success) {
    throw new SchemaError(`sidecar ${path}: ${parsed.error.issues[0]?.message}`);
  }
  const meta = parsed.data;
  if (meta.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaError(
      `unsupported schema_version ${meta.schema_version} in ${path} ` +
        `(this renderer supports ${SUPPORTED_SCHEMA_VERSION})`,
    );
  }
  if (meta.artifact_version !== SUPPORTED_ARTIFACT_VERSION) {
    throw new SchemaError(
      `unsupported artifact_version ${meta.artifact_version} in ${path} ` +
        `(this renderer supports ${SUPPORTED_ARTIFACT_VERSION})`,
    );
  }
  return meta;
}
