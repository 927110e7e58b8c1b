/* SNR design sweep from a design artifact: log-log SNR vs total mass, one
 * line per repetition count. */

import { Row, num } from "../data.js";
import { Meta, SchemaError } from "../meta.js";
import * as svg from "../svg.js";

const LINE_COLORS = ["#1b7837", "#762a83", "#e08214", "#2166ac", "#b2182b"];

const log10 = Math.log10;

function decadeTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(lo - 1e-9); e <= Math.floor(hi + 1e-9); e++) out.push(e);
  return out;
}

export function renderSnr(rows: Row[], meta: Meta): string {
  if (rows.length === 0) throw new SchemaError("design artifact has no rows");
  const byReps = new Map<number, [number, number][]>();
  for (const r of rows) {
    const reps = num(r, "repetitions");
    const snr = num(r, "snr");
    if (snr <= 0) throw new SchemaError(`non-positive snr ${snr}; log plot needs snr > 0`);
    if (!byReps.has(reps)) byReps.set(reps, []);
    byReps.get(reps)!.push([log10(num(r, "total_mass_kg")), log10(snr)]);
  }

  let xMin = Infinity, xMax = -Infinity, yMin = Infinity, yMax = -Infinity;
  for (const pts of byReps.values()) {
    for (const [x, y] of pts) {
      xMin = Math.min(xMin, x); xMax = Math.max(xMax, x);
      yMin = Math.min(yMin, y); yMax = Math.max(yMax, y);
    }
  }
  yMin -= 0.15; yMax += 0.15;

  const { left, top } = svg.MARGIN;
  const sx = svg.linearScale(xMin, xMax, left, left + svg.PLOT_W);
  const sy = svg.linearScale(yMin, yMax, top + svg.PLOT_H, top);

  const parts: string[] = [];
  if (yMin < 0 && yMax > 0) {
    const y0 = sy(0);
    parts.push(
      `<line x1="${left}" y1="${y0.toFixed(1)}" x2="${left + svg.PLOT_W}" ` +
        `y2="${y0.toFixed(1)}" stroke="#bbb" stroke-dasharray="2 3"/>`,
    );
    parts.push(svg.text(left + 4, y0 - 4, "SNR = 1", 'fill="#888"'));
  }
  let li = 0;
  for (const [reps, pts] of [...byReps.entries()].sort((a, b) => a[0] - b[0])) {
    pts.sort((a, b) => a[0] - b[0]);
    const color = LINE_COLORS[li % LINE_COLORS.length];
    parts.push(
      svg.linePath(pts.map(([x, y]) => [sx(x), sy(y)] as [number, number]),
        `stroke="${color}" stroke-width="2" class="reps-${reps}"`),
    );
    for (const [x, y] of pts) {
      parts.push(`<circle cx="${sx(x).toFixed(1)}" cy="${sy(y).toFixed(1)}" r="3" fill="${color}"/>`);
    }
    parts.push(svg.text(left + 10, top + 16 + 16 * li, `M = ${reps} repetitions`,
      `fill="${color}" font-weight="bold"`));
    li += 1;
  }
  const tickFmt = (v: number) => `1e${v}`;
  parts.push(svg.axes(sx, sy, [xMin, xMax], [yMin, yMax],
    "total mass [kg]", "SNR",
    { xTicks: decadeTicks(xMin, xMax), yTicks: decadeTicks(yMin, yMax), tickFmt }));
  return svg.document("detection SNR vs total mass", parts.join("\n"));
}
