import { describe, expect, it } from "vitest";

import { CsvSchemaError, parseSweepCsv } from "../src/csv.js";

const HEADER =
  "t_1_s,n,re_protocol,im_protocol,re_oracle,im_oracle,re_nmr,im_nmr,abs_err_max";

describe("parseSweepCsv", () => {
  it("parses a minimal trace table", () => {
    const table = parseSweepCsv(
      `${HEADER}\n0.0005,2,-0.3,-0.95,-0.3,-0.95,,,1e-12\n`,
    );
    expect(table.timeColumns).toEqual(["t_1_s"]);
    expect(table.rows).toHaveLength(1);
    expect(table.rows[0].protocol).toEqual({ re: -0.3, im: -0.95 });
    expect(table.rows[0].nmr).toBeNull();
    expect(table.rows[0].absErrMax).toBeCloseTo(1e-12);
  });

  it("parses order-scan tables without time columns", () => {
    const header = HEADER.replace("t_1_s,", "");
    const table = parseSweepCsv(`${header}\n3,0.1,0.2,,,,,\n`);
    expect(table.timeColumns).toEqual([]);
    expect(table.rows[0].n).toBe(3);
    expect(table.rows[0].oracle).toBeNull();
    expect(table.rows[0].absErrMax).toBeNull();
  });

  it("reports the offending header column", () => {
    const bad = HEADER.replace("re_oracle", "re_direct");
    expect(() => parseSweepCsv(`${bad}\n0.1,2,,,,,,,\n`)).toThrowError(
      /expected 're_oracle', found 're_direct'/,
    );
  });

  it("rejects unexpected trailing columns", () => {
    expect(() => parseSweepCsv(`${HEADER},extra\n0.1,2,,,,,,,,\n`)).toThrowError(
      /trailing column.*'extra'/,
    );
  });

  it("rejects an empty body", () => {
    expect(() => parseSweepCsv(`${HEADER}\n`)).toThrowError(/no data rows/);
  });

  it("rejects half-filled backend cells", () => {
    expect(() =>
      parseSweepCsv(`${HEADER}\n0.0005,2,-0.3,,,,,,\n`),
    ).toThrowError(/'re_protocol'\/'im_protocol'/);
  });

  it("names the column of a non-numeric cell", () => {
    expect(() =>
      parseSweepCsv(`${HEADER}\n0.0005,2,abc,0.1,,,,,\n`),
    ).toThrowError(/line 2: column 're_protocol'/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseSweepCsv(`${HEADER}\n0.0005,2,1,0\n`)).toThrowError(
      /expected 9 cells, found 4/,
    );
  });

  it("rejects a non-integer order", () => {
    expect(() =>
      parseSweepCsv(`${HEADER}\n0.0005,2.5,1,0,,,,,\n`),
    ).toThrowError(CsvSchemaError);
  });
});
