// Regenerates the documented figure analogues from the committed recipe CSVs
// (no physics is recomputed here) and checks every required visual element.

import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { loadSpec } from "../src/spec.js";
import { renderSpec, run } from "../src/main.js";

const RECIPES = fileURLToPath(new URL("../../recipes/", import.meta.url));

describe("figure recipes", () => {
  it("renders the time-series figure with three labelled curves", () => {
    const spec = loadSpec(join(RECIPES, "fig1.json"));
    const svg = renderSpec(spec);
    expect(svg).toContain("alpha = pi/4, free");
    expect(svg).toContain("alpha = pi/20, free");
    expect(svg).toContain("alpha = pi/20, kappa = 1.5");
    for (const color of ["#c62828", "#1565c0", "#111111"]) {
      expect(svg).toContain(`stroke="${color}"`);
    }
  });

  for (const name of ["fig2a", "fig2b", "fig3a", "fig3b"]) {
    it(`renders ${name} with forbidden region, Werner line and colored curves`, () => {
      const spec = loadSpec(join(RECIPES, `${name}.json`));
      const svg = renderSpec(spec);
      expect(svg).toContain('fill="#dcdcdc"'); // forbidden region
      expect(svg).toContain('stroke-dasharray="4 4"'); // dashed Werner line
      expect(svg).toContain('stroke="#c62828"');
      expect(svg).toContain('stroke="#1565c0"');
      expect(svg).toContain('stroke="#111111"');
    });
  }

  it("writes an SVG file end to end through the CLI entry", () => {
    const dir = mkdtempSync(join(tmpdir(), "cavityduo-fig-"));
    const specPath = join(dir, "spec.json");
    writeFileSync(
      specPath,
      JSON.stringify({
        kind: "cpplane",
        inputs: [{ path: join(RECIPES, "..", "data", "fig2a.csv") }],
        out: join(dir, "fig2a.svg"),
      }),
    );
    expect(run(["--spec", specPath])).toBe(0);
  });

  it("fails cleanly on an empty CSV", () => {
    const dir = mkdtempSync(join(tmpdir(), "cavityduo-fig-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    expect(run(["cpplane", empty, "--out", join(dir, "x.svg")])).toBe(1);
    expect(run(["nonsense"])).toBe(2);
  });
});
