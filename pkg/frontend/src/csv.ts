/**
 * Parser for the sweep CSV contract written by the spincorr CLI.
 *
 * Fixed header: t_1_s,...,t_k_s,n,re_protocol,im_protocol,re_oracle,
 * im_oracle,re_nmr,im_nmr,abs_err_max with k in {0, 1, 2}. Backend cells are
 * either both present (re and im) or both empty.
 */

export interface Complex {
  re: number;
  im: number;
}

export interface SweepRow {
  times: number[]; // seconds, one per time column
  n: number;
  protocol: Complex | null;
  oracle: Complex | null;
  nmr: Complex | null;
  absErrMax: number | null;
}

export interface SweepTable {
  timeColumns: string[];
  rows: SweepRow[];
}

export class CsvSchemaError extends Error {}

const BACKENDS = ["protocol", "oracle", "nmr"] as const;
export type Backend = (typeof BACKENDS)[number];

const FIXED_TAIL = [
  "n",
  "re_protocol",
  "im_protocol",
  "re_oracle",
  "im_oracle",
  "re_nmr",
  "im_nmr",
  "abs_err_max",
];

function parseNumberCell(cell: string, column: string, line: number): number {
  const value = Number(cell);
  if (cell.trim() === "" || !Number.isFinite(value)) {
    throw new CsvSchemaError(
      `line ${line}: column '${column}' has non-numeric cell '${cell}'`,
    );
  }
  return value;
}

function parseBackendCells(
  re: string,
  im: string,
  backend: Backend,
  line: number,
): Complex | null {
  const reEmpty = re.trim() === "";
  const imEmpty = im.trim() === "";
  if (reEmpty !== imEmpty) {
    throw new CsvSchemaError(
      `line ${line}: columns 're_${backend}'/'im_${backend}' must be both set or both empty`,
    );
  }
  if (reEmpty) return null;
  return {
    re: parseNumberCell(re, `re_${backend}`, line),
    im: parseNumberCell(im, `im_${backend}`, line),
  };
}

export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty file: missing header row");
  }
  const header = lines[0].split(",");

  // leading time columns: t_1_s, t_2_s, ...
  const timeColumns: string[] = [];
  let i = 0;
  while (i < header.length && header[i] === `t_${i + 1}_s`) {
    timeColumns.push(header[i]);
    i += 1;
  }
  const tail = header.slice(i);
  for (let j = 0; j < FIXED_TAIL.length; j += 1) {
    if (tail[j] !== FIXED_TAIL[j]) {
      throw new CsvSchemaError(
        `header column ${i + j + 1}: expected '${FIXED_TAIL[j]}', found '${tail[j] ?? "(missing)"}'`,
      );
    }
  }
  if (tail.length > FIXED_TAIL.length) {
    throw new CsvSchemaError(
      `header has ${tail.length - FIXED_TAIL.length} unexpected trailing column(s) ` +
        `starting at '${tail[FIXED_TAIL.length]}'`,
    );
  }
  if (timeColumns.length > 2) {
    throw new CsvSchemaError(
      `unsupported layout: ${timeColumns.length} time columns (at most 2)`,
    );
  }

  const body = lines.slice(1);
  if (body.length === 0) {
    throw new CsvSchemaError("CSV has a header but no data rows");
  }

  const rows: SweepRow[] = body.map((line, idx) => {
    const lineNo = idx + 2;
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new CsvSchemaError(
        `line ${lineNo}: expected ${header.length} cells, found ${cells.length}`,
      );
    }
    const k = timeColumns.length;
    const times = timeColumns.map((col, ti) => parseNumberCell(cells[ti], col, lineNo));
    const n = parseNumberCell(cells[k], "n", lineNo);
    if (!Number.isInteger(n) || n < 1) {
      throw new CsvSchemaError(`line ${lineNo}: column 'n' must be a positive integer`);
    }
    const [protocol, oracle, nmr] = BACKENDS.map((backend, bi) =>
      parseBackendCells(cells[k + 1 + 2 * bi], cells[k + 2 + 2 * bi], backend, lineNo),
    );
    const errCell = cells[k + 7];
    const absErrMax =
      errCell.trim() === "" ? null : parseNumberCell(errCell, "abs_err_max", lineNo);
    return { times, n, protocol, oracle, nmr, absErrMax };
  });

  return { timeColumns, rows };
}
