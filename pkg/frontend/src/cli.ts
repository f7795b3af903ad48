#!/usr/bin/env node
/**
 * render --csv <file> --kind <traces|surface|order-scan> --out <svg|png>
 */

import { parseArgs } from "node:util";

import { FigureKind, renderFile } from "./render.js";

const KINDS: FigureKind[] = ["traces", "surface", "order-scan"];

export async function main(argv: string[]): Promise<number> {
  const [command, ...rest] = argv;
  if (command !== "render") {
    process.stderr.write("usage: spincorr-render render --csv <file> --kind <kind> --out <file>\n");
    return 1;
  }
  let values;
  try {
    ({ values } = parseArgs({
      args: rest,
      options: {
        csv: { type: "string" },
        kind: { type: "string" },
        out: { type: "string" },
        title: { type: "string" },
      },
    }));
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  const { csv, kind, out, title } = values;
  if (!csv || !kind || !out) {
    process.stderr.write("error: --csv, --kind and --out are required\n");
    return 1;
  }
  if (!KINDS.includes(kind as FigureKind)) {
    process.stderr.write(`error: unknown kind '${kind}', expected ${KINDS.join(", ")}\n`);
    return 1;
  }
  try {
    const path = await renderFile({ csvPath: csv, kind: kind as FigureKind, outPath: out, title });
    process.stdout.write(`wrote ${path}\n`);
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const isDirectRun = process.argv[1] !== undefined
  && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirectRun) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
