import { numberColumn, type Table } from "./csv.js";
import { clipTo, legendBox, makeFrame, pathElement, polylinePath, svgDocument, type Stroke } from "./svg.js";

export interface SeriesStyle {
  label: string;
  stroke: Stroke;
}

// red solid / blue dashed / black solid, the convention used throughout
export const DEFAULT_SERIES: Stroke[] = [
  { color: "#c62828", width: 1.6 },
  { color: "#1565c0", width: 1.6, dash: "6 3" },
  { color: "#111111", width: 1.3 },
];

export function renderTimeseries(tables: Table[], styles?: SeriesStyle[]): string {
  if (tables.length === 0) {
    throw new Error("timeseries figure needs at least one input table");
  }
  const series = tables.map((table, i) => ({
    t: numberColumn(table, "t"),
    concurrence: numberColumn(table, "concurrence"),
    purity: numberColumn(table, "purity"),
    label: styles?.[i]?.label ?? table.source,
    stroke: styles?.[i]?.stroke ?? DEFAULT_SERIES[i % DEFAULT_SERIES.length]!,
  }));
  const tMax = Math.max(...series.map((s) => s.t[s.t.length - 1]!));

  const width = 640;
  const panel = { w: 540, h: 190, x: 70 };
  const top = makeFrame(panel.x, 20, panel.w, panel.h, [0, tMax], [0, 1.02], "", "concurrence");
  const bottom = makeFrame(panel.x, 250, panel.w, panel.h, [0, tMax], [0, 1.02], "time (units of 1/g)", "purity");

  const body: string[] = ["<defs>" + clipTo(top, "panel-top") + clipTo(bottom, "panel-bottom") + "</defs>"];
  body.push(...top.elements, ...bottom.elements);
  body.push(`<g clip-path="url(#panel-top)">`);
  for (const s of series) {
    body.push(pathElement(polylinePath(s.t, s.concurrence, top.sx, top.sy), s.stroke));
  }
  body.push("</g>");
  body.push(`<g clip-path="url(#panel-bottom)">`);
  for (const s of series) {
    body.push(pathElement(polylinePath(s.t, s.purity, bottom.sx, bottom.sy), s.stroke));
  }
  body.push("</g>");
  body.push(...legendBox(top, series.map((s) => ({ label: s.label, stroke: s.stroke }))));
  return svgDocument(width, 470, body);
}
