/* Dispatch: pick a plot kind from the sidecar's artifact name (or an explicit
 * override) and return the finished SVG string. */

import { loadRows } from "./data.js";
import { loadMeta, Meta, SchemaError } from "./meta.js";
import { renderKappa } from "./plots/kappa.js";
import { renderSnr } from "./plots/snr.js";
import { renderWigner } from "./plots/wigner.js";

export type PlotKind = "wigner" | "kappa" | "snr";

export const PLOT_KINDS: PlotKind[] = ["wigner", "kappa", "snr"];

const ARTIFACT_KINDS: Record<string, PlotKind> = {
  "nongauss.wigner": "wigner",
  "nongauss.evolve": "kappa",
  "nongauss.design": "snr",
};

export function inferKind(meta: Meta): PlotKind {
  const kind = ARTIFACT_KINDS[meta.artifact];
  if (kind === undefined) {
    throw new SchemaError(
      `no plot for artifact "${meta.artifact}"; pass --kind to force one of ${PLOT_KINDS}`,
    );
  }
  return kind;
}

export function renderArtifact(dataPath: string, kind?: PlotKind): string {
  const meta = loadMeta(dataPath);
  const rows = loadRows(dataPath, meta);
  switch (kind ?? inferKind(meta)) {
    case "wigner":
      return renderWigner(rows, meta);
    case "kappa":
      return renderKappa(rows, meta);
    case "snr":
      return renderSnr(rows, meta);
  }
}
