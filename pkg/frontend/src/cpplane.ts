import { CsvFormatError, numberColumn, stringColumn, type Table } from "./csv.js";
import { clipTo, legendBox, makeFrame, pathElement, polygonElement, polylinePath, svgDocument, type Stroke } from "./svg.js";

interface Curve {
  purity: number[];
  concurrence: number[];
}

const STYLES: Record<string, Stroke> = {
  trajectory: { color: "#111111", width: 0.9 },
  c_minus_alpha: { color: "#1565c0", width: 1.7, dash: "6 3" },
  c_plus_alpha: { color: "#1565c0", width: 1.7, dash: "6 3" },
  c_minus_bell: { color: "#c62828", width: 1.7 },
  c_plus_bell: { color: "#c62828", width: 1.7 },
  werner: { color: "#888888", width: 1.4, dash: "4 4" },
  limit: { color: "#666666", width: 1.0, dash: "1.5 3" },
  mems: { color: "#555555", width: 1.2 },
};

function groupCurves(table: Table): Map<string, Curve> {
  const labels = stringColumn(table, "curve");
  const purity = numberColumn(table, "purity");
  const concurrence = numberColumn(table, "concurrence");
  const groups = new Map<string, Curve>();
  labels.forEach((label, i) => {
    let curve = groups.get(label);
    if (!curve) {
      curve = { purity: [], concurrence: [] };
      groups.set(label, curve);
    }
    curve.purity.push(purity[i]!);
    curve.concurrence.push(concurrence[i]!);
  });
  return groups;
}

export function renderCpplane(table: Table): string {
  const groups = groupCurves(table);
  for (const required of ["trajectory", "mems", "werner", "c_minus_alpha", "c_minus_bell"]) {
    if (!groups.has(required)) {
      throw new CsvFormatError(`${table.source}: no '${required}' rows; is this a cpplane file?`);
    }
  }
  const width = 560;
  const frame = makeFrame(70, 20, 460, 420, [0.25, 1.005], [0, 1.02], "purity", "concurrence");
  const body: string[] = ["<defs>" + clipTo(frame, "plane") + "</defs>", ...frame.elements];
  body.push(`<g clip-path="url(#plane)">`);

  // states above the frontier do not exist: shade that region
  const mems = groups.get("mems")!;
  const xs = [...mems.purity, 1.005, 0.25];
  const ys = [...mems.concurrence, 1.02, 1.02];
  body.push(polygonElement(xs, ys, frame.sx, frame.sy, "#dcdcdc"));

  const order = ["mems", "limit", "werner", "c_minus_bell", "c_plus_bell", "c_minus_alpha", "c_plus_alpha", "trajectory"];
  for (const name of order) {
    const curve = groups.get(name);
    if (!curve) continue;
    body.push(pathElement(polylinePath(curve.purity, curve.concurrence, frame.sx, frame.sy), STYLES[name]!));
  }
  body.push("</g>");

  const legend = [
    { label: "trajectory", stroke: STYLES.trajectory! },
    { label: "free, same start", stroke: STYLES.c_minus_alpha! },
    { label: "free, Bell start", stroke: STYLES.c_minus_bell! },
    { label: "Werner states", stroke: STYLES.werner! },
    { label: "MEMS frontier", stroke: STYLES.mems! },
  ];
  body.push(...legendBox(frame, legend));
  return svgDocument(width, 480, body);
}
