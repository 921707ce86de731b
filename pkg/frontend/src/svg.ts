/** Minimal deterministic SVG line charts: no timestamps, no randomness,
 * fixed palette and layout, so identical input yields identical bytes. */

export interface Series {
  label: string;
  points: { x: number; y: number }[];
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  logX?: boolean;
  logY?: boolean;
  /** horizontal rule, e.g. the 0.95 success threshold */
  hline?: number;
}

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 70, right: 160, top: 40, bottom: 50 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                 "#8c564b", "#17becf"];

function fmt(v: number): string {
  return Number(v.toPrecision(6)).toString();
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / (count * step);
  const mult = err >= 7.5 ? 10 : err >= 3 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-12 * span; v += s) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function renderChart(series: Series[], opts: ChartOptions): string {
  const pts = series.flatMap((s) => s.points);
  if (pts.length === 0) {
    throw new Error("nothing to plot: every series is empty");
  }
  const tx = (v: number) => (opts.logX ? Math.log10(v) : v);
  const ty = (v: number) => (opts.logY ? Math.log10(v) : v);
  const xs = pts.map((p) => tx(p.x));
  const ys = pts.map((p) => ty(p.y));
  if (opts.hline !== undefined) ys.push(ty(opts.hline));
  let xLo = Math.min(...xs), xHi = Math.max(...xs);
  let yLo = Math.min(...ys), yHi = Math.max(...ys);
  if (xLo === xHi) { xLo -= 0.5; xHi += 0.5; }
  if (yLo === yHi) { yLo -= 0.5; yHi += 0.5; }
  const padX = 0.04 * (xHi - xLo);
  const padY = 0.06 * (yHi - yLo);
  xLo -= padX; xHi += padX; yLo -= padY; yHi += padY;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (v: number) => MARGIN.left + ((tx(v) - xLo) / (xHi - xLo)) * plotW;
  const py = (v: number) => MARGIN.top + plotH - ((ty(v) - yLo) / (yHi - yLo)) * plotH;

  const out: string[] = [];
  out.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`);
  out.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  out.push(`<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15">${opts.title}</text>`);

  // axes
  const x0 = MARGIN.left, y0 = MARGIN.top + plotH;
  out.push(`<line x1="${x0}" y1="${y0}" x2="${x0 + plotW}" y2="${y0}" stroke="black"/>`);
  out.push(`<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="black"/>`);
  for (const t of niceTicks(xLo, xHi, 6)) {
    const x = MARGIN.left + ((t - xLo) / (xHi - xLo)) * plotW;
    const label = opts.logX ? fmt(Math.pow(10, t)) : fmt(t);
    out.push(`<line x1="${fmt(x)}" y1="${y0}" x2="${fmt(x)}" y2="${y0 + 5}" stroke="black"/>`);
    out.push(`<text x="${fmt(x)}" y="${y0 + 20}" text-anchor="middle" font-family="sans-serif" font-size="11">${label}</text>`);
  }
  for (const t of niceTicks(yLo, yHi, 6)) {
    const y = MARGIN.top + plotH - ((t - yLo) / (yHi - yLo)) * plotH;
    const label = opts.logY ? fmt(Math.pow(10, t)) : fmt(t);
    out.push(`<line x1="${x0 - 5}" y1="${fmt(y)}" x2="${x0}" y2="${fmt(y)}" stroke="black"/>`);
    out.push(`<text x="${x0 - 8}" y="${fmt(y + 4)}" text-anchor="end" font-family="sans-serif" font-size="11">${label}</text>`);
  }
  out.push(`<text x="${x0 + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-family="sans-serif" font-size="13">${opts.xLabel}</text>`);
  out.push(`<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${opts.yLabel}</text>`);

  if (opts.hline !== undefined) {
    const y = py(opts.hline);
    out.push(`<line x1="${x0}" y1="${fmt(y)}" x2="${x0 + plotW}" y2="${fmt(y)}" stroke="gray" stroke-dasharray="6 4"/>`);
  }

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const sorted = [...s.points].sort((a, b) => a.x - b.x);
    if (sorted.length > 1) {
      const path = sorted.map((p) => `${fmt(px(p.x))},${fmt(py(p.y))}`).join(" ");
      out.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    }
    for (const p of sorted) {
      out.push(`<circle cx="${fmt(px(p.x))}" cy="${fmt(py(p.y))}" r="3.5" fill="${color}"/>`);
    }
    const ly = MARGIN.top + 16 + i * 18;
    const lx = MARGIN.left + plotW + 12;
    out.push(`<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`);
    out.push(`<text x="${lx + 28}" y="${ly}" font-family="sans-serif" font-size="12">${s.label}</text>`);
  });

  out.push("</svg>");
  return out.join("\n") + "\n";
}
