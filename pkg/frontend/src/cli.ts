#!/usr/bin/env node
/* render <data.csv|data.json> [--out plot.svg] [--kind wigner|kappa|snr]
 *
 * The data file must sit next to its <name>.meta.json sidecar as emitted by
 * the nongauss CLI. Exit codes: 0 ok, 2 schema/config problem. */

import { writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { PLOT_KINDS, PlotKind, renderArtifact } from "./render.js";
import { SchemaError } from "./meta.js";

export function main(argv: string[]): number {
  let code = 0;
  yargs(argv)
    .command(
      "render <data>",
      "render a nongauss artifact to SVG",
      (y) =>
        y
          .positional("data", { type: "string", demandOption: true })
          .option("out", { type: "string", describe: "output SVG path (default: <data>.svg)" })
          .option("kind", { choices: PLOT_KINDS, describe: "override the inferred plot kind" }),
      (args) => {
        const out = args.out ?? args.data.replace(/\.(csv|json)$/, "") + ".svg";
        try {
          writeFileSync(out, renderArtifact(args.data, args.kind as PlotKind | undefined));
          console.log(`wrote ${out}`);
        } catch (err) {
          if (err instanceof SchemaError) {
            console.error(`error: ${err.message}`);
            code = 2;
          } else {
            throw err;
          }
        }
      },
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      if (err) throw err;
      console.error(`error: ${msg}`);
      code = 2;
    })
    .parseSync();
  return code;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("nongauss-plots")) {
  process.exit(main(hideBin(process.argv)));
}
