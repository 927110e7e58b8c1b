import { execFileSync } from "node:child_process";
import { copyFileSync, mkdtempSync, readFileSync, writeFileSync, existsSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { loadMeta, SchemaError } from "../src/meta.js";
import { loadRows } from "../src/data.js";
import { inferKind, renderArtifact } from "../src/render.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const FIX = join(HERE, "fixtures");
const CLI = join(HERE, "..", "dist", "cli.js");

function fixture(name: string): string {
  return join(FIX, name);
}

describe("sidecar validation", () => {
  it("loads a valid sidecar", () => {
    const meta = loadMeta(fixture("wigner.csv"));
    expect(meta.artifact).toBe("nongauss.wigner");
    expect(meta.columns).toEqual(["x", "p", "w"]);
  });

  it("rejects a missing sidecar", () => {
    expect(() => loadMeta(fixture("nope.csv"))).toThrow(SchemaError);
  });

  it("rejects an unsupported schema_version", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    copyFileSync(fixture("wigner.csv"), join(dir, "wigner.csv"));
    const meta = JSON.parse(readFileSync(fixture("wigner.meta.json"), "utf8"));
    meta.schema_version = 2;
    writeFileSync(join(dir, "wigner.meta.json"), JSON.stringify(meta));
    expect(() => loadMeta(join(dir, "wigner.csv"))).toThrow(/schema_version 2/);
  });

  it("rejects columns that disagree with the sidecar", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    copyFileSync(fixture("wigner.csv"), join(dir, "wigner.csv"));
    const meta = JSON.parse(readFileSync(fixture("wigner.meta.json"), "utf8"));
    meta.columns = ["x", "p", "value"];
    writeFileSync(join(dir, "wigner.meta.json"), JSON.stringify(meta));
    expect(() => loadRows(join(dir, "wigner.csv"), loadMeta(join(dir, "wigner.csv"))))
      .toThrow(/columns/);
  });
});

describe("plot kinds", () => {
  it("infers the kind from the artifact name", () => {
    expect(inferKind(loadMeta(fixture("wigner.csv")))).toBe("wigner");
    expect(inferKind(loadMeta(fixture("evolve.csv")))).toBe("kappa");
    expect(inferKind(loadMeta(fixture("design.csv")))).toBe("snr");
  });

  it("renders all three artifact kinds without error", () => {
    for (const name of ["wigner.csv", "evolve.csv", "design.csv"]) {
      const out = renderArtifact(fixture(name));
      expect(out.startsWith("<svg")).toBe(true);
      expect(out.trimEnd().endsWith("</svg>")).toBe(true);
    }
  });

  it("marks a negative contour on the interference-state wigner grid", () => {
    const out = renderArtifact(fixture("wigner.csv"));
    expect(out).toContain('class="negative-contour"');
    const group = out.split('class="negative-contour"')[1].split("</g>")[0];
    expect(group).toContain("<path");
  });

  it("draws one kappa4 trace per channel", () => {
    const out = renderArtifact(fixture("evolve.csv"));
    expect(out).toContain('class="channel-qg"');
    expect(out).toContain('class="channel-cg"');
  });

  it("draws one snr line per repetition count", () => {
    const out = renderArtifact(fixture("design.csv"));
    for (const reps of [10000, 40000, 160000]) {
      expect(out).toContain(`class="reps-${reps}"`);
    }
  });
});

describe("cli", () => {
  it("writes an svg next to the data file by default", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    copyFileSync(fixture("design.csv"), join(dir, "design.csv"));
    copyFileSync(fixture("design.meta.json"), join(dir, "design.meta.json"));
    execFileSync("node", [CLI, "render", join(dir, "design.csv")]);
    expect(existsSync(join(dir, "design.svg"))).toBe(true);
  });

  it("honors --out", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "plot.svg");
    execFileSync("node", [CLI, "render", fixture("wigner.csv"), "--out", out]);
    expect(readFileSync(out, "utf8")).toContain("negative-contour");
  });

  it("exits nonzero on a schema mismatch", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    copyFileSync(fixture("evolve.csv"), join(dir, "evolve.csv"));
    const meta = JSON.parse(readFileSync(fixture("evolve.meta.json"), "utf8"));
    meta.schema_version = 99;
    writeFileSync(join(dir, "evolve.meta.json"), JSON.stringify(meta));
    let status = 0;
    try {
      execFileSync("node", [CLI, "render", join(dir, "evolve.csv")], { stdio: "pipe" });
    } catch (err: any) {
      status = err.status;
    }
    expect(status).toBe(2);
    expect(existsSync(join(dir, "evolve.svg"))).toBe(false);
  });
});
