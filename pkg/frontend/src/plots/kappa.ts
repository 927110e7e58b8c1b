/* kappa4(t) traces from an evolve artifact: one line per channel (qg = Kerr,
 * cg = matched quadratic/phase channel) at the first recorded quadrature
 * angle. The contrast between the two is the whole point of the plot. */

import { Row, num } from "../data.js";
import { Meta, SchemaError } from "../meta.js";
import * as svg from "../svg.js";

const CHANNEL_COLORS: Record<string, string> = { qg: "#b2182b", cg: "#2166ac" };

export function renderKappa(rows: Row[], meta: Meta): string {
  if (rows.length === 0) throw new SchemaError("evolve artifact has no rows");
  const phi0 = num(rows[0], "phi");
  const byChannel = new Map<string, [number, number][]>();
  for (const r of rows) {
    if (num(r, "phi") !== phi0) continue;
    const ch = String(r["channel"]);
    if (!byChannel.has(ch)) byChannel.set(ch, []);
    byChannel.get(ch)!.push([num(r, "t"), num(r, "kappa4")]);
  }

  let tMin = Infinity, tMax = -Infinity, kMin = Infinity, kMax = -Infinity;
  for (const pts of byChannel.values()) {
    for (const [t, k] of pts) {
      tMin = Math.min(tMin, t); tMax = Math.max(tMax, t);
      kMin = Math.min(kMin, k); kMax = Math.max(kMax, k);
    }
  }
  const pad = (kMax - kMin || Math.max(Math.abs(kMax), 1e-12)) * 0.08;
  kMin -= pad; kMax += pad;

  const { left, top } = svg.MARGIN;
  const sx = svg.linearScale(tMin, tMax, left, left + svg.PLOT_W);
  const sy = svg.linearScale(kMin, kMax, top + svg.PLOT_H, top);

  const parts: string[] = [];
  if (kMin < 0 && kMax > 0) {
    const y0 = sy(0);
    parts.push(
      `<line x1="${left}" y1="${y0.toFixed(1)}" x2="${left + svg.PLOT_W}" ` +
        `y2="${y0.toFixed(1)}" stroke="#bbb"/>`,
    );
  }
  let li = 0;
  for (const [ch, pts] of byChannel) {
    pts.sort((a, b) => a[0] - b[0]);
    const color = CHANNEL_COLORS[ch] ?? "#555";
    parts.push(
      svg.linePath(pts.map(([t, k]) => [sx(t), sy(k)] as [number, number]),
        `stroke="${color}" stroke-width="2" class="channel-${ch}"`),
    );
    parts.push(svg.text(left + svg.PLOT_W - 110, top + 16 + 16 * li,
      `${ch}`, `fill="${color}" font-weight="bold"`));
    li += 1;
  }
  parts.push(svg.axes(sx, sy, [tMin, tMax], [kMin, kMax], "t", "kappa4"));
  return svg.document(`kappa4(t) at phi = ${svg.fmt(phi0)}`, parts.join("\n"));
}
