/**
 * Figure assembly for the three sweep layouts:
 *
 * - "traces":     Re/Im vs one time coordinate (theory lines from the oracle
 *                 columns, measured protocol values as dots)
 * - "surface":    Re and Im heat maps over two time coordinates
 * - "order-scan": Re/Im vs the correlation order n
 *
 * Output is deterministic SVG; a .png extension rasterizes the same SVG.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { Complex, CsvSchemaError, SweepRow, SweepTable, parseSweepCsv } from "./csv.js";
import {
  IM_COLOR,
  RE_COLOR,
  Scale,
  circle,
  divergingColor,
  document,
  fmt,
  line,
  linearScale,
  polyline,
  rect,
  text,
  tickLabel,
  ticks,
} from "./svg.js";

export type FigureKind = "traces" | "surface" | "order-scan";

export interface FigureJob {
  csvPath: string;
  kind: FigureKind;
  outPath: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

const KIND_TIME_COLUMNS: Record<FigureKind, number> = {
  traces: 1,
  surface: 2,
  "order-scan": 0,
};

interface Frame {
  x: Scale;
  y: Scale;
  body: string[];
}

function axesFrame(
  x0: number,
  y0: number,
  w: number,
  h: number,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  xTicks: number[],
  yTicks: number[],
): Frame {
  const x = linearScale(xDomain, [x0, x0 + w]);
  const y = linearScale(yDomain, [y0 + h, y0]);
  const axisStyle = 'stroke="#333" stroke-width="1"';
  const gridStyle = 'stroke="#ddd" stroke-width="0.5"';
  const body: string[] = [];
  for (const tv of xTicks) {
    body.push(line(x(tv), y0, x(tv), y0 + h, gridStyle));
    body.push(text(x(tv), y0 + h + 18, tickLabel(tv), 'font-size="11" text-anchor="middle"'));
  }
  for (const tv of yTicks) {
    body.push(line(x0, y(tv), x0 + w, y(tv), gridStyle));
    body.push(
      text(x0 - 8, y(tv) + 4, tickLabel(tv), 'font-size="11" text-anchor="end"'),
    );
  }
  body.push(rect(x0, y0, w, h, 'fill="none" stroke="#333" stroke-width="1"'));
  body.push(text(x0 + w / 2, y0 + h + 38, xLabel, 'font-size="13" text-anchor="middle"'));
  body.push(
    text(18, y0 + h / 2, "") // placeholder keeps structure flat; real label below
      .replace("></text>", ` transform="rotate(-90 18 ${fmt(y0 + h / 2)})" font-size="13" text-anchor="middle">${yLabel}</text>`),
  );
  return { x, y, body };
}

function seriesExtent(values: number[]): [number, number] {
  let lo = Math.min(...values, -1);
  let hi = Math.max(...values, 1);
  const pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;
  return [lo, hi];
}

function backendColumn(rows: SweepRow[], key: "protocol" | "oracle" | "nmr"): Complex[] | null {
  const values = rows.map((row) => row[key]);
  if (values.every((v) => v === null)) return null;
  if (values.some((v) => v === null)) {
    throw new CsvSchemaError(`column 're_${key}' is only partially filled`);
  }
  return values as Complex[];
}

function legend(x0: number, y0: number): string[] {
  return [
    line(x0, y0, x0 + 24, y0, `stroke="${RE_COLOR}" stroke-width="2"`),
    circle(x0 + 12, y0, 3, `fill="${RE_COLOR}"`),
    text(x0 + 30, y0 + 4, "Re", 'font-size="12"'),
    line(x0, y0 + 18, x0 + 24, y0 + 18, `stroke="${IM_COLOR}" stroke-width="2"`),
    circle(x0 + 12, y0 + 18, 3, `fill="${IM_COLOR}"`),
    text(x0 + 30, y0 + 22, "Im", 'font-size="12"'),
  ];
}

function renderLinePlot(
  table: SweepTable,
  xValues: number[],
  xLabel: string,
  yLabel: string,
  title: string,
  integerX: boolean,
): string {
  const rows = table.rows;
  const lines = backendColumn(rows, "oracle");
  const dots = backendColumn(rows, "protocol");
  if (!lines && !dots) {
    throw new CsvSchemaError("no plottable backend columns: 're_oracle' and 're_protocol' are empty");
  }
  const plotted: number[] = [];
  for (const col of [lines, dots]) {
    if (col) plotted.push(...col.map((v) => v.re), ...col.map((v) => v.im));
  }
  const xDomain: [number, number] = [Math.min(...xValues), Math.max(...xValues)];
  const yDomain = seriesExtent(plotted);
  const xTicks = integerX
    ? xValues
    : ticks(xDomain[0], xDomain[1], 7);
  const frame = axesFrame(70, 46, 690, 380, xDomain, yDomain, xLabel, yLabel,
    xTicks, ticks(yDomain[0], yDomain[1], 6));
  const body = [...frame.body];
  body.push(text(400, 24, title, 'font-size="15" text-anchor="middle"'));

  const sorted = xValues.map((x, i) => [x, i] as const).sort((a, b) => a[0] - b[0]);
  if (lines) {
    for (const [part, color] of [["re", RE_COLOR], ["im", IM_COLOR]] as const) {
      const pts = sorted.map(([x, i]) =>
        [frame.x(x), frame.y(lines[i][part])] as [number, number]);
      body.push(polyline(pts, `stroke="${color}" stroke-width="1.5"`));
    }
  }
  if (dots) {
    for (const [part, color] of [["re", RE_COLOR], ["im", IM_COLOR]] as const) {
      for (const [x, i] of sorted) {
        body.push(circle(frame.x(x), frame.y(dots[i][part]), 3.2, `fill="${color}"`));
      }
    }
  }
  body.push(...legend(640, 60));
  return document(800, 490, body);
}

function renderTraces(table: SweepTable, job: FigureJob): string {
  const xValues = table.rows.map((row) => row.times[0] * 1e3);
  return renderLinePlot(table, xValues, job.xLabel ?? "t (ms)",
    job.yLabel ?? "correlation", job.title ?? basename(job.csvPath), false);
}

function renderOrderScan(table: SweepTable, job: FigureJob): string {
  const xValues = table.rows.map((row) => row.n);
  return renderLinePlot(table, xValues, job.xLabel ?? "correlation order n",
    job.yLabel ?? "correlation", job.title ?? basename(job.csvPath), true);
}

function surfaceCells(rows: SweepRow[]): { t1: number[]; t2: number[]; grid: Complex[][] } {
  const t1 = [...new Set(rows.map((r) => r.times[0]))].sort((a, b) => a - b);
  const t2 = [...new Set(rows.map((r) => r.times[1]))].sort((a, b) => a - b);
  if (t1.length * t2.length !== rows.length) {
    throw new CsvSchemaError(
      `surface grid is not rectangular: ${t1.length} x ${t2.length} axes but ${rows.length} rows`,
    );
  }
  const index = (arr: number[], v: number) => arr.indexOf(v);
  const grid: (Complex | null)[][] = t1.map(() => t2.map(() => null));
  for (const row of rows) {
    const value = row.protocol ?? row.oracle;
    if (!value) {
      throw new CsvSchemaError("surface cells need 're_protocol' or 're_oracle' values");
    }
    const i = index(t1, row.times[0]);
    const j = index(t2, row.times[1]);
    if (grid[i][j] !== null) {
      throw new CsvSchemaError(
        `duplicate surface cell at t_1_s=${row.times[0]}, t_2_s=${row.times[1]}`,
      );
    }
    grid[i][j] = value;
  }
  return { t1, t2, grid: grid as Complex[][] };
}

function renderSurface(table: SweepTable, job: FigureJob): string {
  const { t1, t2, grid } = surfaceCells(table.rows);
  const body: string[] = [];
  const title = job.title ?? basename(job.csvPath);
  body.push(text(470, 24, title, 'font-size="15" text-anchor="middle"'));

  const panels: Array<{ x0: number; label: string; part: "re" | "im" }> = [
    { x0: 70, label: "Re", part: "re" },
    { x0: 480, label: "Im", part: "im" },
  ];
  const y0 = 60;
  const size = 330;
  const cw = size / t1.length;
  const ch = size / t2.length;
  for (const { x0, label, part } of panels) {
    body.push(text(x0 + size / 2, y0 - 10, label, 'font-size="13" text-anchor="middle"'));
    for (let i = 0; i < t1.length; i += 1) {
      for (let j = 0; j < t2.length; j += 1) {
        const v = grid[i][j][part];
        // t2 increases upward
        body.push(rect(x0 + i * cw, y0 + size - (j + 1) * ch, cw, ch,
          `fill="${divergingColor(v)}"`));
      }
    }
    body.push(rect(x0, y0, size, size, 'fill="none" stroke="#333" stroke-width="1"'));
    for (let i = 0; i < t1.length; i += 1) {
      if (i % 2 === 0) {
        body.push(text(x0 + (i + 0.5) * cw, y0 + size + 16,
          tickLabel(t1[i] * 1e3), 'font-size="10" text-anchor="middle"'));
      }
    }
    for (let j = 0; j < t2.length; j += 1) {
      if (j % 2 === 0) {
        body.push(text(x0 - 6, y0 + size - (j + 0.5) * ch + 3,
          tickLabel(t2[j] * 1e3), 'font-size="10" text-anchor="end"'));
      }
    }
    body.push(text(x0 + size / 2, y0 + size + 34, job.xLabel ?? "t1 (ms)",
      'font-size="12" text-anchor="middle"'));
  }
  body.push(
    text(16, y0 + size / 2, "")
      .replace("></text>", ` transform="rotate(-90 16 ${fmt(y0 + size / 2)})" font-size="12" text-anchor="middle">${job.yLabel ?? "t2 (ms)"}</text>`),
  );

  // colorbar, fixed [-1, 1]
  const cbX = 880;
  const steps = 40;
  for (let s = 0; s < steps; s += 1) {
    const v = 1 - (2 * s) / (steps - 1);
    body.push(rect(cbX, y0 + (s * size) / steps, 18, size / steps + 0.5,
      `fill="${divergingColor(v)}"`));
  }
  body.push(rect(cbX, y0, 18, size, 'fill="none" stroke="#333" stroke-width="1"'));
  for (const v of [-1, 0, 1]) {
    body.push(text(cbX + 24, y0 + size * (1 - v) / 2 + 4, String(v), 'font-size="11"'));
  }
  return document(940, 470, body);
}

export function renderSvg(table: SweepTable, job: FigureJob): string {
  const expected = KIND_TIME_COLUMNS[job.kind];
  if (table.timeColumns.length !== expected) {
    throw new CsvSchemaError(
      `figure kind '${job.kind}' needs ${expected} time column(s), ` +
        `CSV has ${table.timeColumns.length}`,
    );
  }
  if (job.kind === "traces") return renderTraces(table, job);
  if (job.kind === "surface") return renderSurface(table, job);
  return renderOrderScan(table, job);
}

export async function renderFile(job: FigureJob): Promise<string> {
  const table = parseSweepCsv(readFileSync(job.csvPath, "utf-8"));
  const svg = renderSvg(table, job);
  if (job.outPath.endsWith(".png")) {
    const { Resvg } = await import("@resvg/resvg-js");
    const png = new Resvg(svg, { fitTo: { mode: "original" } }).render().asPng();
    writeFileSync(job.outPath, png);
  } else {
    writeFileSync(job.outPath, svg, "utf-8");
  }
  return job.outPath;
}
