import { HarnessRow } from "./schema";
import { Series, ChartOptions, renderChart } from "./svg";

export const FIGURE_IDS = [
  "alpha-vs-samples",
  "beta-vs-samples",
  "n-vs-success",
  "noise-error",
] as const;

export type FigureId = (typeof FIGURE_IDS)[number];

export interface FigureSpec {
  id: FigureId;
  csv: string;
  output: string;
  title?: string;
  /** success_frac threshold used when reducing a sample grid to a minimal m */
  quantile?: number;
}

export interface Figure {
  series: Series[];
  options: ChartOptions;
}

const DEFAULT_QUANTILE = 0.95;

function schemes(rows: HarnessRow[]): string[] {
  return [...new Set(rows.map((r) => r.scheme))].sort();
}

/** smallest m in the grid whose success fraction clears the threshold */
function minimalM(cells: HarnessRow[], quantile: number): number | null {
  const ok = cells.filter((r) => r.success_frac >= quantile);
  if (ok.length === 0) return null;
  return Math.min(...ok.map((r) => r.m));
}

function groupBy<K>(rows: HarnessRow[], key: (r: HarnessRow) => K): Map<K, HarnessRow[]> {
  const out = new Map<K, HarnessRow[]>();
  for (const r of rows) {
    const k = key(r);
    const bucket = out.get(k);
    if (bucket) bucket.push(r);
    else out.set(k, [r]);
  }
  return out;
}

function minimalMSeries(
  rows: HarnessRow[],
  xKey: "alpha" | "beta",
  quantile: number,
): Series[] {
  return schemes(rows).map((scheme) => {
    const mine = rows.filter((r) => r.scheme === scheme);
    const points: { x: number; y: number }[] = [];
    for (const [x, cells] of groupBy(mine, (r) => r[xKey])) {
      const m = minimalM(cells, quantile);
      if (m !== null) points.push({ x, y: m });
    }
    return { label: scheme, points: points.sort((a, b) => a.x - b.x) };
  });
}

export function buildFigure(id: FigureId, rows: HarnessRow[], spec: Partial<FigureSpec> = {}): Figure {
  const quantile = spec.quantile ?? DEFAULT_QUANTILE;
  switch (id) {
    case "alpha-vs-samples":
      return {
        series: minimalMSeries(rows, "alpha", quantile),
        options: {
          title: spec.title ?? "samples needed vs coherence",
          xLabel: "power-law exponent alpha",
          yLabel: `samples for ${quantile} success`,
          logY: true,
        },
      };
    case "beta-vs-samples":
      return {
        series: minimalMSeries(rows, "beta", quantile),
        options: {
          title: spec.title ?? "samples needed vs phase split",
          xLabel: "phase-1 budget fraction beta",
          yLabel: `samples for ${quantile} success`,
          logY: true,
        },
      };
    case "n-vs-success": {
      const series = schemes(rows).map((scheme) => ({
        label: scheme,
        points: rows
          .filter((r) => r.scheme === scheme)
          .map((r) => ({ x: r.n, y: r.success_frac }))
          .sort((a, b) => a.x - b.x),
      }));
      return {
        series,
        options: {
          title: spec.title ?? "recovery rate vs matrix size",
          xLabel: "matrix size n",
          yLabel: "success fraction",
          hline: quantile,
        },
      };
    }
    case "noise-error": {
      const series = schemes(rows).map((scheme) => ({
        label: scheme,
        points: rows
          .filter((r) => r.scheme === scheme && isFinite(r.median_rel_err))
          .map((r) => ({ x: r.m, y: r.median_rel_err }))
          .sort((a, b) => a.x - b.x),
      }));
      return {
        series,
        options: {
          title: spec.title ?? "recovery error vs sample budget (noisy entries)",
          xLabel: "samples m",
          yLabel: "median relative error",
          logX: true,
          logY: true,
        },
      };
    }
    default: {
      const never: never = id;
      throw new Error(`unknown figure id: ${never}`);
    }
  }
}

export function renderFigure(id: FigureId, rows: HarnessRow[], spec: Partial<FigureSpec> = {}): string {
  const fig = buildFigure(id, rows, spec);
  return renderChart(fig.series, fig.options);
}
