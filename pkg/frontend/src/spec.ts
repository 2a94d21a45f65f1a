import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

export class SpecError extends Error {}

export interface FigureInput {
  path: string;
  label?: string;
  color?: string;
  dash?: string;
}

export interface FigureSpec {
  kind: "timeseries" | "cpplane";
  inputs: FigureInput[];
  out: string;
}

/** Load a figure spec; all paths inside resolve relative to the spec file. */
export function loadSpec(path: string): FigureSpec {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new SpecError(`${path}: ${(err as Error).message}`);
  }
  if (typeof raw !== "object" || raw === null) {
    throw new SpecError(`${path}: spec must be a JSON object`);
  }
  const spec = raw as Record<string, unknown>;
  if (spec.kind !== "timeseries" && spec.kind !== "cpplane") {
    throw new SpecError(`${path}: 'kind' must be 'timeseries' or 'cpplane'`);
  }
  if (!Array.isArray(spec.inputs) || spec.inputs.length === 0) {
    throw new SpecError(`${path}: 'inputs' must be a non-empty array`);
  }
  if (typeof spec.out !== "string" || spec.out.length === 0) {
    throw new SpecError(`${path}: 'out' must be a file path`);
  }
  const base = dirname(resolve(path));
  const inputs: FigureInput[] = spec.inputs.map((entry, i) => {
    if (typeof entry === "string") {
      return { path: resolve(base, entry) };
    }
    if (typeof entry !== "object" || entry === null || typeof (entry as FigureInput).path !== "string") {
      throw new SpecError(`${path}: inputs[${i}] must be a path or an object with 'path'`);
    }
    const input = entry as FigureInput;
    return { ...input, path: resolve(base, input.path) };
  });
  return { kind: spec.kind, inputs, out: resolve(base, spec.out) };
}
