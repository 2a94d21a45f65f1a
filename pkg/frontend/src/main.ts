import { readFileSync, writeFileSync } from "node:fs";

import { renderCpplane } from "./cpplane.js";
import { CsvFormatError, parseTable, type Table } from "./csv.js";
import { loadSpec, SpecError, type FigureSpec } from "./spec.js";
import { DEFAULT_SERIES, renderTimeseries, type SeriesStyle } from "./timeseries.js";

const USAGE = `usage:
  figures --spec <figure.json>
  figures timeseries <csv...> --out <file.svg>
  figures cpplane <csv> --out <file.svg>`;

function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new CsvFormatError(`${path}: ${(err as Error).message}`);
  }
  return parseTable(text, path);
}

export function renderSpec(spec: FigureSpec): string {
  const tables = spec.inputs.map((input) => readTable(input.path));
  if (spec.kind === "cpplane") {
    if (tables.length !== 1) {
      throw new SpecError("cpplane figures take exactly one input file");
    }
    return renderCpplane(tables[0]!);
  }
  const styles: SeriesStyle[] = spec.inputs.map((input, i) => {
    const fallback = DEFAULT_SERIES[i % DEFAULT_SERIES.length]!;
    return {
      label: input.label ?? input.path.replace(/^.*\//, ""),
      stroke: { color: input.color ?? fallback.color, width: fallback.width, dash: input.dash ?? fallback.dash },
    };
  });
  return renderTimeseries(tables, styles);
}

export function run(argv: string[]): number {
  try {
    if (argv[0] === "--spec" && argv.length === 2) {
      const spec = loadSpec(argv[1]!);
      writeFileSync(spec.out, renderSpec(spec));
      console.log(`wrote ${spec.out}`);
      return 0;
    }
    const kind = argv[0];
    if (kind === "timeseries" || kind === "cpplane") {
      const outFlag = argv.indexOf("--out");
      if (outFlag < 0 || outFlag + 1 >= argv.length) {
        console.error(USAGE);
        return 2;
      }
      const out = argv[outFlag + 1]!;
      const paths = argv.slice(1, outFlag);
      if (paths.length === 0) {
        console.error(USAGE);
        return 2;
      }
      const spec: FigureSpec = { kind, inputs: paths.map((p) => ({ path: p })), out };
      writeFileSync(out, renderSpec(spec));
      console.log(`wrote ${out}`);
      return 0;
    }
    console.error(USAGE);
    return 2;
  } catch (err) {
    if (err instanceof CsvFormatError || err instanceof SpecError) {
      console.error(`figures: error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("main.js")) {
  process.exit(run(process.argv.slice(2)));
}
