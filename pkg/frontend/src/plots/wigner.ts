/* Wigner heatmap: diverging colormap centered at W = 0, with the negative
 * region outlined by an explicit contour (class "negative-contour") whenever
 * the grid dips below zero. */

import { contours } from "d3-contour";
import { Row, num } from "../data.js";
import { Meta, SchemaError } from "../meta.js";
import * as svg from "../svg.js";

/* Two-sided lerp between RdBu endpoints: negative -> red, zero -> white,
 * positive -> blue, symmetric about 0 regardless of the data's min/max. */
const NEG = [178, 24, 43];
const MID = [247, 247, 247];
const POS = [33, 102, 172];

function color(w: number, amp: number): string {
  const t = Math.max(-1, Math.min(1, amp > 0 ? w / amp : 0));
  const [a, b] = t < 0 ? [MID, NEG] : [MID, POS];
  const s = Math.abs(t);
  const c = a.map((v, i) => Math.round(v + (b[i] - v) * s));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

export function renderWigner(rows: Row[], meta: Meta): string {
  const xs = [...new Set(rows.map((r) => num(r, "x")))].sort((a, b) => a - b);
  const ps = [...new Set(rows.map((r) => num(r, "p")))].sort((a, b) => a - b);
  const nx = xs.length;
  const ny = ps.length;
  if (nx * ny !== rows.length) {
    throw new SchemaError(`wigner grid is not rectangular: ${nx}x${ny} != ${rows.length}`);
  }
  const xi = new Map(xs.map((v, i) => [v, i]));
  const pi = new Map(ps.map((v, i) => [v, i]));
  const values = new Float64Array(nx * ny);
  for (const r of rows) {
    values[pi.get(num(r, "p"))! * nx + xi.get(num(r, "x"))!] = num(r, "w");
  }
  let wMin = Infinity;
  let wMax = -Infinity;
  for (const w of values) {
    if (w < wMin) wMin = w;
    if (w > wMax) wMax = w;
  }
  const amp = Math.max(Math.abs(wMin), Math.abs(wMax));

  const { left, top } = svg.MARGIN;
  const cw = svg.PLOT_W / nx;
  const ch = svg.PLOT_H / ny;
  /* p increases upward: grid row j maps to the j-th cell from the bottom. */
  const py = (j: number) => top + svg.PLOT_H - (j + 1) * ch;

  const cells: string[] = [];
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      cells.push(
        `<rect x="${(left + i * cw).toFixed(2)}" y="${py(j).toFixed(2)}" ` +
          `width="${(cw + 0.2).toFixed(2)}" height="${(ch + 0.2).toFixed(2)}" ` +
          `fill="${color(values[j * nx + i], amp)}"/>`,
      );
    }
  }

  let negative = "";
  if (wMin < 0) {
    /* The level set at half the most negative value outlines where W < 0
     * with a margin that survives coarse grids. Contour coordinates are in
     * grid units (x right, y down from row 0 = lowest p). */
    const gen = contours().size([nx, ny]).thresholds([wMin / 2]);
    const paths: string[] = [];
    for (const c of gen(Array.from(values))) {
      for (const poly of c.coordinates) {
        for (const ring of poly) {
          const pts = ring.map(([gx, gy]) => [
            left + gx * cw,
            top + svg.PLOT_H - gy * ch,
          ] as [number, number]);
          paths.push(svg.linePath(pts, 'stroke="#000" stroke-width="1.5" stroke-dasharray="4 3"'));
        }
      }
    }
    negative = `<g class="negative-contour">\n${paths.join("\n")}\n</g>`;
  }

  const sx = svg.linearScale(xs[0], xs[nx - 1], left + cw / 2, left + svg.PLOT_W - cw / 2);
  const sy = svg.linearScale(ps[0], ps[ny - 1], top + svg.PLOT_H - ch / 2, top + ch / 2);
  const frame = svg.axes(sx, sy, [xs[0], xs[nx - 1]], [ps[0], ps[ny - 1]], "x", "p");
  const title =
    `W(x, p)  min ${svg.fmt(wMin)}  max ${svg.fmt(wMax)}` +
    (wMin < 0 ? "  (dashed: negative region)" : "");
  return svg.document(title, cells.join("\n") + "\n" + negative + "\n" + frame);
}
