import { describe, expect, it } from "vitest";

import { renderCpplane } from "../src/cpplane.js";
import { parseTable } from "../src/csv.js";
import { renderTimeseries } from "../src/timeseries.js";

function seriesCsv(scale: number): string {
  const rows = [0, 0.5, 1, 1.5].map((t) => `${t},${scale * (1 - t / 2)},${scale * t * 0.3}`).join("\n");
  return `# cavity-duo v1\nt,purity,concurrence\n${rows}\n`;
}

function cpplaneCsv(): string {
  const lines = ["# cavity-duo v1", "curve,param,purity,concurrence"];
  const push = (label: string, pts: [number, number][]) => {
    for (const [p, c] of pts) lines.push(`${label},${p},${p},${c}`);
  };
  push("trajectory", [[1, 0.31], [0.8, 0.5], [0.6, 0.2]]);
  push("c_minus_alpha", [[0.5, 0.19], [0.75, 0.25], [1, 0.31]]);
  push("c_plus_alpha", [[0.5, 0.19], [0.52, 0.1]]);
  push("c_minus_bell", [[0.5, 0.5], [0.75, 0.85], [1, 1]]);
  push("c_plus_bell", [[0.5, 0.5], [0.75, 0.15], [1, 0]]);
  push("mems", [[0.25, 0], [1 / 3, 0], [5 / 9, 2 / 3], [1, 1]]);
  push("werner", [[0.25, 0], [1 / 3, 0], [1, 1]]);
  push("limit", [[1 / 3, 0], [1, 1]]);
  return lines.join("\n") + "\n";
}

describe("renderTimeseries", () => {
  it("draws one concurrence and one purity path per input with the color convention", () => {
    const tables = [seriesCsv(1), seriesCsv(0.8), seriesCsv(0.5)].map((text, i) => parseTable(text, `s${i}.csv`));
    const svg = renderTimeseries(tables);
    expect(svg.startsWith("<svg")).toBe(true);
    for (const color of ["#c62828", "#1565c0", "#111111"]) {
      expect(svg.match(new RegExp(`stroke="${color}"`, "g"))!.length).toBeGreaterThanOrEqual(2);
    }
    expect(svg).toContain("concurrence");
    expect(svg).toContain("purity");
    expect(svg).toContain('stroke-dasharray="6 3"'); // second series is dashed
  });

  it("requires the evolve columns", () => {
    const bad = parseTable("# cavity-duo v1\nx,y\n1,2\n", "bad.csv");
    expect(() => renderTimeseries([bad])).toThrow(/missing column 't'/);
  });
});

describe("renderCpplane", () => {
  const svg = renderCpplane(parseTable(cpplaneCsv(), "cp.csv"));

  it("shades the forbidden region above the frontier", () => {
    expect(svg).toContain('<polygon');
    expect(svg).toContain('fill="#dcdcdc"');
  });

  it("draws the dashed Werner line and all three colored curves", () => {
    expect(svg).toContain('stroke-dasharray="4 4"'); // werner
    expect(svg).toContain('stroke="#888888"');
    expect(svg).toContain('stroke="#c62828"'); // Bell reference
    expect(svg).toContain('stroke="#1565c0"'); // same-start reference
    expect(svg).toContain('stroke="#111111"'); // trajectory
  });

  it("rejects files without the cpplane structure", () => {
    const evolve = parseTable(seriesCsv(1), "evolve.csv");
    expect(() => renderCpplane(evolve)).toThrow(/missing column 'curve'/);
    const incomplete = parseTable("# cavity-duo v1\ncurve,param,purity,concurrence\ntrajectory,0,1,0\n", "inc.csv");
    expect(() => renderCpplane(incomplete)).toThrow(/no 'mems' rows/);
  });
});
