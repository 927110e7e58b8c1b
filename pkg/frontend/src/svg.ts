/* Minimal SVG assembly: a fixed-margin frame with linear axes and tick
 * labels. Everything returns strings; no DOM. */

import { ticks } from "d3-array";

export const WIDTH = 640;
export const HEIGHT = 480;
export const MARGIN = { left: 70, right: 20, top: 40, bottom: 50 };

export const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
export const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

export type Scale = (v: number) => number;

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return String(parseFloat(v.toPrecision(4)));
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function text(x: number, y: number, s: string, attrs = ""): string {
  const size = attrs.includes("font-size") ? "" : 'font-size="12" ';
  return `<text x="${x.toFixed(1)}" y="${y.toFixed(1)}" ${size}` +
    `font-family="sans-serif" ${attrs}>${esc(s)}</text>`;
}

export function linePath(pts: [number, number][], attrs: string): string {
  const d = pts
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`)
    .join("");
  return `<path d="${d}" fill="none" ${attrs}/>`;
}

/* Axes with ticks in *data* units; tickFmt lets log plots label decades. */
export function axes(
  sx: Scale,
  sy: Scale,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  opts: { xTicks?: number[]; yTicks?: number[]; tickFmt?: (v: number) => string } = {},
): string {
  const f = opts.tickFmt ?? fmt;
  const xt = opts.xTicks ?? ticks(xDomain[0], xDomain[1], 6);
  const yt = opts.yTicks ?? ticks(yDomain[0], yDomain[1], 6);
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + PLOT_H;
  parts.push(
    `<rect x="${x0}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" ` +
      `fill="none" stroke="#333"/>`,
  );
  for (const v of xt) {
    const px = sx(v);
    if (px < x0 - 0.5 || px > x0 + PLOT_W + 0.5) continue;
    parts.push(`<line x1="${px.toFixed(1)}" y1="${y0}" x2="${px.toFixed(1)}" y2="${y0 + 5}" stroke="#333"/>`);
    parts.push(text(px, y0 + 18, f(v), 'text-anchor="middle"'));
  }
  for (const v of yt) {
    const py = sy(v);
    if (py < MARGIN.top - 0.5 || py > y0 + 0.5) continue;
    parts.push(`<line x1="${x0 - 5}" y1="${py.toFixed(1)}" x2="${x0}" y2="${py.toFixed(1)}" stroke="#333"/>`);
    parts.push(text(x0 - 8, py + 4, f(v), 'text-anchor="end"'));
  }
  parts.push(text(x0 + PLOT_W / 2, HEIGHT - 10, xLabel, 'text-anchor="middle"'));
  parts.push(
    text(18, MARGIN.top + PLOT_H / 2, yLabel,
      `text-anchor="middle" transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})"`),
  );
  return parts.join("\n");
}

export function document(title: string, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>\n` +
    text(WIDTH / 2, 22, title, 'text-anchor="middle" font-size="14"') +
    "\n" + body + "\n</svg>\n"
  );
}
