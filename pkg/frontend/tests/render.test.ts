import { execSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { parseSweepCsv } from "../src/csv.js";
import { FigureKind, renderFile, renderSvg } from "../src/render.js";

// the preset CSVs come from the Python CLI: the only interface this
// package consumes
const PRESET_KINDS: Record<string, FigureKind> = {
  fig4a: "traces",
  fig4b: "traces",
  fig4c: "traces",
  fig4d: "traces",
  fig5: "traces",
  fig6: "surface",
  fig7xx: "order-scan",
  fig7xy: "order-scan",
};

let dataDir: string;
let outDir: string;

beforeAll(() => {
  dataDir = mkdtempSync(join(tmpdir(), "spincorr-csv-"));
  outDir = mkdtempSync(join(tmpdir(), "spincorr-fig-"));
  execSync(`python3 -m spincorr.cli figure --preset all --out ${dataDir}`, {
    stdio: "pipe",
  });
}, 120_000);

describe("preset rendering", () => {
  for (const [preset, kind] of Object.entries(PRESET_KINDS)) {
    it(`renders ${preset} as ${kind}`, async () => {
      const out = join(outDir, `${preset}.svg`);
      await renderFile({ csvPath: join(dataDir, `${preset}.csv`), kind, outPath: out });
      const svg = readFileSync(out, "utf-8");
      expect(svg).toContain("<svg");
      expect(svg).toContain("</svg>");
    });
  }

  it("the three-time surface consumes exactly 100 rows", () => {
    const table = parseSweepCsv(readFileSync(join(dataDir, "fig6.csv"), "utf-8"));
    expect(table.rows).toHaveLength(100);
    expect(table.timeColumns).toEqual(["t_1_s", "t_2_s"]);
    const svg = renderSvg(table, {
      csvPath: "fig6.csv",
      kind: "surface",
      outPath: "unused.svg",
    });
    // 100 cells per panel, two panels
    const cellCount = (svg.match(/<rect /g) ?? []).length;
    expect(cellCount).toBeGreaterThanOrEqual(200);
  });

  it("rejects a kind inconsistent with the column count", async () => {
    await expect(
      renderFile({
        csvPath: join(dataDir, "fig6.csv"),
        kind: "traces",
        outPath: join(outDir, "bad.svg"),
      }),
    ).rejects.toThrowError(/'traces' needs 1 time column/);
    expect(existsSync(join(outDir, "bad.svg"))).toBe(false);
  });

  it("renders identical bytes for identical input", async () => {
    const a = join(outDir, "det-a.svg");
    const b = join(outDir, "det-b.svg");
    await renderFile({ csvPath: join(dataDir, "fig4a.csv"), kind: "traces", outPath: a });
    await renderFile({ csvPath: join(dataDir, "fig4a.csv"), kind: "traces", outPath: b });
    expect(readFileSync(a, "utf-8")).toEqual(readFileSync(b, "utf-8"));
  });

  it("writes PNG when asked to", async () => {
    const out = join(outDir, "fig6.png");
    await renderFile({ csvPath: join(dataDir, "fig6.csv"), kind: "surface", outPath: out });
    const bytes = readFileSync(out);
    expect([...bytes.subarray(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);
  });

  it("refuses an empty CSV body and writes nothing", async () => {
    const csv = join(dataDir, "empty.csv");
    const header = readFileSync(join(dataDir, "fig4a.csv"), "utf-8").split("\n")[0];
    writeFileSync(csv, `${header}\n`);
    const out = join(outDir, "empty.svg");
    await expect(
      renderFile({ csvPath: csv, kind: "traces", outPath: out }),
    ).rejects.toThrowError(/no data rows/);
    expect(existsSync(out)).toBe(false);
  });
});

describe("series layout", () => {
  it("draws oracle lines and protocol dots", () => {
    const table = parseSweepCsv(readFileSync(join(dataDir, "fig4a.csv"), "utf-8"));
    const svg = renderSvg(table, { csvPath: "fig4a.csv", kind: "traces", outPath: "x.svg" });
    expect((svg.match(/<polyline /g) ?? []).length).toBe(2); // Re + Im theory lines
    // 20 sweep points, Re + Im dots, plus 2 legend markers
    expect((svg.match(/<circle /g) ?? []).length).toBe(42);
  });
});
