/**
 * Minimal deterministic SVG assembly: fixed canvas, fixed fonts and fixed
 * two-decimal coordinate formatting, so identical data yields identical
 * bytes.
 */

export const FONT = "font-family=\"Liberation Sans, DejaVu Sans, sans-serif\"";

export function fmt(x: number): string {
  // avoid "-0.00"
  const rounded = Math.round(x * 100) / 100;
  return (Object.is(rounded, -0) ? 0 : rounded).toFixed(2);
}

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function ticks(lo: number, hi: number, count: number): number[] {
  if (lo === hi) return [lo];
  const rawStep = (hi - lo) / Math.max(1, count - 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * power);
  const step = candidates.find((s) => s >= rawStep) ?? rawStep;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9 * step; v += step) {
    out.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return out;
}

export function tickLabel(v: number): string {
  const abs = Math.abs(v);
  if (abs !== 0 && (abs >= 1e4 || abs < 1e-2)) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

export function line(x1: number, y1: number, x2: number, y2: number, style: string): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`;
}

export function polyline(points: Array<[number, number]>, style: string): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" ${style}/>`;
}

export function circle(cx: number, cy: number, r: number, style: string): string {
  return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${style}/>`;
}

export function rect(x: number, y: number, w: number, h: number, style: string): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ${style}/>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  style = "",
): string {
  const escaped = content
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
  return `<text x="${fmt(x)}" y="${fmt(y)}" ${FONT} ${style}>${escaped}</text>`;
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    rect(0, 0, width, height, 'fill="white"'),
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

/** Diverging colormap: -1 -> blue, 0 -> white, +1 -> orange. */
export function divergingColor(v: number): string {
  const clamped = Math.max(-1, Math.min(1, v));
  const blue: [number, number, number] = [31, 119, 180];
  const white: [number, number, number] = [255, 255, 255];
  const orange: [number, number, number] = [230, 97, 0];
  const [from, to, s] =
    clamped < 0 ? [white, blue, -clamped] : [white, orange, clamped];
  const mix = from.map((c, i) => Math.round(c + (to[i] - c) * s));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}

export const RE_COLOR = "#e66100"; // orange for the real part
export const IM_COLOR = "#1f77b4"; // blue for the imaginary part
